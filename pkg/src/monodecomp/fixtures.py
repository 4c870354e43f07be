"""Generator for the bundled demo system: a lottery platform monolith with
static structure, domain model, runtime traces, and table usage.

Output is deterministic per seed. The seed varies filler edge weights and
trace timing jitter only; the entity inventory, story edges, mapping, and
trace shapes are fixed so the analysis narrative is stable.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .codegraph import CodeEntity, CodeGraph, StaticEdge, dump_static_graph
from .errors import ArgumentError
from .tracestore import InstanceSample, Span, dump_traces

WINDOW_US = 10_000_000
T0 = 1_700_000_000_000_000

# package -> list of (class name, bounded context)
_INVENTORY: dict[str, list[tuple[str, str]]] = {
    "usermanagement": [
        ("UserAccountFacade", "Customer"),
        ("RegistrationService", "Customer"),
        ("PasswordResetDesk", "Customer"),
        ("RightsAdminConsole", "Administrative"),
    ],
    "usermanagement.user": [
        ("UserStatusService", "Customer"),
        ("UserCredentialStore", "Customer"),
        ("UserPreferencePanel", "Customer"),
        ("UserSessionManager", "Customer"),
        ("UserNotificationService", "Customer"),
    ],
    "usermanagement.customer": [
        ("CustomerDirectory", "Customer"),
        ("CustomerProfileService", "Customer"),
        ("CustomerCardManager", "Customer"),
        ("CustomerCardPrinter", "Customer"),
        ("CustomerAddressBook", "Customer"),
        ("CustomerConsentTracker", "Customer"),
    ],
    "services": [
        ("IdentityVerificationService", "Customer"),
    ],
    "services.permissions": [
        ("PermissionChecker", "Customer"),
        ("PermissionAuditTrail", "Customer"),
    ],
    "services.newsletter": [
        ("NewsletterDelivery", "Marketing"),
        ("NewsletterPromoter", "Marketing"),
        ("NewsletterComposer", "Marketing"),
    ],
    "services.monitoring": [
        ("SystemMonitor", "Administrative"),
        ("AlertDispatcher", "Administrative"),
    ],
    "services.reporting": [
        ("ReportGenerator", "Administrative"),
        ("ReportArchive", "Administrative"),
    ],
    "externalservices": [
        ("OasisGateway", "Customer"),
        ("PaymentProviderConnector", "Payment"),
        ("DirectDebitAdapter", "Payment"),
        ("CreditCardAdapter", "Payment"),
    ],
    "externalservices.workflow": [
        ("PaymentMethodWorkflow", "Payment"),
        ("WorkflowStepExecutor", "Payment"),
        ("WorkflowStateStore", "Payment"),
    ],
    "subledger": [
        ("LedgerEntryService", "Payment"),
        ("LedgerReconciler", "Payment"),
        ("TransactionBookingService", "Payment"),
        ("BookingJournal", "Payment"),
    ],
    "subledger.payment": [
        ("PaymentProcessManager", "Payment"),
        ("PaymentStatusTracker", "Payment"),
        ("PaymentDeadlineWatcher", "Payment"),
    ],
    "subledger.businessprocess": [
        ("BusinessRecordManager", "Payment"),
        ("BusinessProcessRouter", "Payment"),
        ("SettlementBatchRunner", "Payment"),
    ],
    "subledger.wallet": [
        ("WalletAccountService", "Customer"),
        ("WalletTopUpHandler", "Customer"),
        ("WalletStatementView", "Customer"),
        ("WalletLimitGuard", "Customer"),
    ],
    "subledger.ordering": [
        ("ShoppingCart", "Order"),
        ("OrderService", "Order"),
        ("CartEventPublisher", "Order"),
    ],
    "gameprocessing": [
        ("GameCatalog", "Gaming"),
        ("GameCatalogCache", "Gaming"),
        ("GameRuleEngine", "Gaming"),
    ],
    "gameprocessing.gatewayserveradapter": [
        ("LotteryManagerGateway", "Gaming"),
        ("GatewayRequestRouter", "Gaming"),
        ("GatewaySessionGuard", "Gaming"),
    ],
    "gameprocessing.gatewayserveradapter.persistence": [
        ("TicketAttributeStore", "Gaming"),
        ("GatewayAuditLog", "Gaming"),
    ],
    "gameprocessing.lotterygameprocessor": [
        ("GameProcessManager", "Gaming"),
        ("GameOrderAssembler", "Gaming"),
        ("GameResultCollector", "Gaming"),
    ],
    "gameprocessing.lottery": [
        ("LotteryTicketTracker", "Gaming"),
        ("LotteryDrawScheduler", "Gaming"),
    ],
    "instantlottery": [
        ("InstantGameEngine", "Gaming"),
        ("InstantPrizeResolver", "Gaming"),
        ("InstantTicketIssuer", "Gaming"),
    ],
    "prizedataimport": [
        ("PrizeDataImporter", "Gaming"),
        ("PrizeFeedParser", "Gaming"),
    ],
    "prizeanalyzer": [
        ("PrizeDistributionAnalyzer", "Gaming"),
        ("PrizeStatisticsView", "Gaming"),
    ],
    "tsubscriptions": [
        ("SubscriptionScheduler", "Gaming"),
        ("SubscriptionRenewalService", "Gaming"),
        ("SubscriptionNotifier", "Gaming"),
    ],
    "zgw": [
        ("DrawResultPublisher", "Gaming"),
        ("DrawNumberGenerator", "Gaming"),
        ("DrawArchive", "Gaming"),
    ],
}

# the money-transfer request walks seven components end to end
TRANSFER_CHAIN = [
    ("subledger.payment.PaymentProcessManager", "transferMoney"),
    ("services.permissions.PermissionChecker", "checkPermission"),
    ("usermanagement.user.UserStatusService", "loadUser"),
    ("usermanagement.customer.CustomerDirectory", "loadCustomer"),
    ("externalservices.workflow.PaymentMethodWorkflow", "startWorkflow"),
    ("subledger.businessprocess.BusinessRecordManager", "recordBusinessProcess"),
    ("subledger.wallet.WalletAccountService", "creditWallet"),
]

# ticket loading enters at the gateway and fans out to the game processor
TICKET_STEPS = [
    ("gameprocessing.gatewayserveradapter.LotteryManagerGateway",
     "gameprocessing.gatewayserveradapter.persistence.TicketAttributeStore",
     "loadTicketAttributes"),
    ("gameprocessing.gatewayserveradapter.LotteryManagerGateway",
     "gameprocessing.lotterygameprocessor.GameProcessManager",
     "processGameOrder"),
    ("gameprocessing.lotterygameprocessor.GameProcessManager",
     "usermanagement.customer.CustomerDirectory",
     "fetchCustomerData"),
    ("gameprocessing.lotterygameprocessor.GameProcessManager",
     "gameprocessing.lottery.LotteryTicketTracker",
     "trackTicket"),
]

_STORY_EDGES = [
    # money-transfer call chain
    ("subledger.payment.PaymentProcessManager", "services.permissions.PermissionChecker", "call", 3),
    ("services.permissions.PermissionChecker", "usermanagement.user.UserStatusService", "call", 3),
    ("usermanagement.user.UserStatusService", "usermanagement.customer.CustomerDirectory", "call", 3),
    ("usermanagement.customer.CustomerDirectory", "externalservices.workflow.PaymentMethodWorkflow", "call", 3),
    ("externalservices.workflow.PaymentMethodWorkflow", "subledger.businessprocess.BusinessRecordManager", "call", 3),
    ("subledger.businessprocess.BusinessRecordManager", "subledger.wallet.WalletAccountService", "call", 3),
    # ticket loading
    ("gameprocessing.gatewayserveradapter.LotteryManagerGateway",
     "gameprocessing.gatewayserveradapter.persistence.TicketAttributeStore", "call", 4),
    ("gameprocessing.gatewayserveradapter.LotteryManagerGateway",
     "gameprocessing.lotterygameprocessor.GameProcessManager", "call", 4),
    ("gameprocessing.lotterygameprocessor.GameProcessManager",
     "usermanagement.customer.CustomerDirectory", "call", 3),
    ("gameprocessing.lotterygameprocessor.GameProcessManager",
     "gameprocessing.lottery.LotteryTicketTracker", "call", 4),
    # remaining cross-context dependencies
    ("gameprocessing.lotterygameprocessor.GameOrderAssembler",
     "subledger.payment.PaymentProcessManager", "call", 4),
    ("subledger.wallet.WalletTopUpHandler", "subledger.payment.PaymentStatusTracker", "call", 2),
    ("services.newsletter.NewsletterPromoter", "usermanagement.customer.CustomerDirectory", "call", 2),
    ("services.monitoring.SystemMonitor", "usermanagement.UserAccountFacade", "call", 1),
    ("services.monitoring.SystemMonitor", "gameprocessing.GameCatalog", "call", 1),
    ("services.monitoring.SystemMonitor", "subledger.LedgerEntryService", "call", 1),
    ("services.monitoring.SystemMonitor", "services.newsletter.NewsletterDelivery", "call", 1),
    ("services.reporting.ReportGenerator", "subledger.ordering.OrderService", "call", 1),
    ("usermanagement.customer.CustomerProfileService", "subledger.ordering.ShoppingCart", "call", 2),
    ("gameprocessing.lotterygameprocessor.GameOrderAssembler", "subledger.ordering.OrderService", "call", 2),
    ("subledger.ordering.OrderService", "subledger.payment.PaymentProcessManager", "call", 3),
    # the catalog cache hangs off the catalog by a single weak edge
    ("gameprocessing.GameCatalog", "gameprocessing.GameCatalogCache", "call", 1),
    # inheritance flavor
    ("usermanagement.user.UserCredentialStore", "usermanagement.user.UserStatusService", "inherit", 1),
    ("instantlottery.InstantPrizeResolver", "instantlottery.InstantGameEngine", "inherit", 1),
]

_USE_CASES = [
    ("uc-register-account", "Register a player account", ["player"]),
    ("uc-edit-profile", "Edit profile data", ["player"]),
    ("uc-verify-identity", "Verify player identity", ["player", "clerk"]),
    ("uc-manage-customer-card", "Manage the customer card", ["player", "clerk"]),
    ("uc-manage-wallet", "Manage the online wallet", ["player"]),
    ("uc-transfer-money", "Transfer money to the online wallet", ["player"]),
    ("uc-oasis-check", "Run the exclusion-register check", ["clerk"]),
    ("uc-play-lottery", "Play a lottery game", ["player"]),
    ("uc-load-ticket", "Load a lottery ticket", ["player"]),
    ("uc-play-instant", "Play an instant game", ["player"]),
    ("uc-import-prize-data", "Import prize data", ["operator"]),
    ("uc-analyze-prizes", "Analyze prize distribution", ["operator"]),
    ("uc-manage-subscriptions", "Manage ticket subscriptions", ["player"]),
    ("uc-publish-draw", "Publish draw results", ["operator"]),
    ("uc-pay-order", "Pay a game order", ["player"]),
    ("uc-book-transactions", "Book ledger transactions", ["operator"]),
    ("uc-manage-payment-methods", "Manage payment methods", ["player"]),
    ("uc-send-newsletter", "Send the newsletter", ["marketer"]),
    ("uc-promote-newsletter", "Promote the newsletter", ["marketer"]),
    ("uc-subscribe-newsletter", "Subscribe to the newsletter", ["player"]),
    ("uc-monitor-system", "Monitor system health", ["operator"]),
    ("uc-create-reports", "Create operational reports", ["operator"]),
    ("uc-manage-user-rights", "Administer user rights", ["operator"]),
    ("uc-manage-cart", "Manage the shopping cart", ["player"]),
    ("uc-checkout-order", "Check out the shopping cart", ["player"]),
]

_DOMAIN_CONTEXTS = [
    ("dc-account-management", "Account management",
     ["uc-register-account", "uc-edit-profile", "uc-verify-identity"], "Customer"),
    ("dc-identity-verification", "Identity verification",
     ["uc-verify-identity", "uc-oasis-check"], "Customer"),
    ("dc-customer-card", "Customer card", ["uc-manage-customer-card"], "Customer"),
    ("dc-online-wallet", "Online wallet", ["uc-manage-wallet", "uc-transfer-money"], "Customer"),
    ("dc-game-play", "Game play", ["uc-play-lottery", "uc-load-ticket"], "Gaming"),
    ("dc-instant-lottery", "Instant lottery", ["uc-play-instant"], "Gaming"),
    ("dc-draw-results", "Draw results", ["uc-publish-draw"], "Gaming"),
    ("dc-winnings", "Winnings and prizes",
     ["uc-import-prize-data", "uc-analyze-prizes"], "Gaming"),
    ("dc-subscriptions", "Subscriptions", ["uc-manage-subscriptions"], "Gaming"),
    ("dc-payment-method", "Payments",
     ["uc-pay-order", "uc-book-transactions", "uc-manage-payment-methods", "uc-transfer-money"],
     "Payment"),
    ("dc-newsletter", "Newsletter",
     ["uc-send-newsletter", "uc-promote-newsletter", "uc-subscribe-newsletter"], "Marketing"),
    ("dc-monitoring", "Monitoring", ["uc-monitor-system"], "Administrative"),
    ("dc-reporting", "Reporting", ["uc-create-reports"], "Administrative"),
    ("dc-user-administration", "User administration", ["uc-manage-user-rights"], "Administrative"),
    ("dc-ordering", "Ordering", ["uc-manage-cart", "uc-checkout-order"], "Order"),
]

_PACKAGE_MAP = [
    ("usermanagement", "uc-register-account"),
    ("usermanagement", "uc-edit-profile"),
    ("usermanagement", "uc-manage-customer-card"),
    ("usermanagement", "uc-manage-user-rights"),
    ("usermanagement.RightsAdminConsole", "uc-manage-user-rights"),
    ("services", "uc-verify-identity"),
    ("services", "uc-send-newsletter"),
    ("services", "uc-monitor-system"),
    ("services", "uc-create-reports"),
    ("services.IdentityVerificationService", "uc-verify-identity"),
    ("services.permissions", "uc-verify-identity"),
    ("services.newsletter", "uc-send-newsletter"),
    ("services.newsletter", "uc-promote-newsletter"),
    ("services.newsletter", "uc-subscribe-newsletter"),
    ("services.monitoring", "uc-monitor-system"),
    ("services.reporting", "uc-create-reports"),
    ("externalservices", "uc-oasis-check"),
    ("externalservices", "uc-manage-payment-methods"),
    ("externalservices", "uc-pay-order"),
    ("externalservices.OasisGateway", "uc-oasis-check"),
    ("subledger", "uc-pay-order"),
    ("subledger", "uc-book-transactions"),
    ("subledger", "uc-transfer-money"),
    ("subledger", "uc-manage-customer-card"),
    ("subledger.wallet", "uc-manage-wallet"),
    ("subledger.ordering", "uc-manage-cart"),
    ("subledger.ordering", "uc-checkout-order"),
    ("gameprocessing", "uc-play-lottery"),
    ("gameprocessing", "uc-load-ticket"),
    ("instantlottery", "uc-play-instant"),
    ("prizedataimport", "uc-import-prize-data"),
    ("prizeanalyzer", "uc-analyze-prizes"),
    ("tsubscriptions", "uc-manage-subscriptions"),
    ("zgw", "uc-publish-draw"),
]

_TABLES = [
    ("User", "user_id",
     ["user_id", "email", "address", "password_hash", "cart_items", "order_total",
      "last_ticket_id", "winnings_balance"]),
    ("Wallet", "wallet_id", ["wallet_id", "user_id", "balance"]),
    ("CustomerCard", "card_id", ["card_id", "user_id", "status"]),
    ("Ticket", "ticket_id", ["ticket_id", "game", "numbers", "state"]),
    ("PaymentTransaction", "tx_id", ["tx_id", "amount", "method", "state"]),
    ("NewsletterOptIn", "optin_id", ["optin_id", "user_id", "topic"]),
    ("AuditLog", "entry_id", ["entry_id", "source", "message"]),
    ("CartLine", "line_id", ["line_id", "user_id", "item", "qty"]),
    ("LegacyImportStaging", "staging_id", ["staging_id", "blob"]),
]

_ACCESSES = [
    ("uc-edit-profile", "User", ["user_id", "email", "address"], "write"),
    ("uc-register-account", "User", ["user_id", "email", "password_hash"], "write"),
    ("uc-checkout-order", "User", ["user_id", "cart_items", "order_total"], "write"),
    ("uc-play-lottery", "User", ["user_id", "last_ticket_id", "winnings_balance"], "write"),
    ("uc-manage-wallet", "Wallet", ["wallet_id", "user_id", "balance"], "write"),
    ("uc-transfer-money", "Wallet", ["wallet_id", "balance"], "write"),
    ("uc-manage-customer-card", "CustomerCard", ["card_id", "user_id", "status"], "write"),
    ("uc-play-lottery", "Ticket", ["ticket_id", "game", "numbers", "state"], "write"),
    ("uc-load-ticket", "Ticket", ["ticket_id", "state"], "read"),
    ("uc-pay-order", "PaymentTransaction", ["tx_id", "amount", "method", "state"], "write"),
    ("uc-book-transactions", "PaymentTransaction", ["tx_id", "amount", "state"], "write"),
    ("uc-subscribe-newsletter", "NewsletterOptIn", ["optin_id", "user_id", "topic"], "write"),
    ("uc-monitor-system", "AuditLog", ["entry_id", "source", "message"], "write"),
    ("uc-create-reports", "AuditLog", ["entry_id", "source", "message"], "read"),
    ("uc-manage-cart", "CartLine", ["line_id", "user_id", "item", "qty"], "write"),
]


@dataclass(frozen=True)
class FixtureBundle:
    graph_text: str
    domain_text: str
    traces_text: str
    tables_text: str


def expected_context_of(class_id: str) -> str:
    package, name = class_id.rsplit(".", 1)
    for cls, ctx in _INVENTORY[package]:
        if cls == name:
            return ctx
    raise KeyError(class_id)


def _entities() -> list[CodeEntity]:
    entities = []
    for package in _INVENTORY:
        parent = package.rsplit(".", 1)[0] if "." in package else None
        entities.append(CodeEntity(package, "package", package.rsplit(".", 1)[-1], parent))
    for package, members in _INVENTORY.items():
        for name, _ in members:
            entities.append(CodeEntity(f"{package}.{name}", "class", name, package))
    return entities


def _filler_edges(rng: random.Random) -> list[StaticEdge]:
    """Deterministic intra-package, intra-context endpoints; seeded weights."""
    edges = []
    kinds = ("call", "field")
    k = 0

    def ok(a, b):
        return (
            expected_context_of(a) == expected_context_of(b)
            and "GameCatalogCache" not in (a.rsplit(".", 1)[1], b.rsplit(".", 1)[1])
        )

    for package, members in _INVENTORY.items():
        ids = [f"{package}.{name}" for name, _ in members]
        for a, b in zip(ids, ids[1:]):
            if ok(a, b):
                edges.append(StaticEdge(a, b, kinds[k % 2], rng.randrange(2, 9)))
                k += 1
        if len(ids) >= 3 and ok(ids[0], ids[2]):
            edges.append(StaticEdge(ids[0], ids[2], kinds[k % 2], rng.randrange(2, 9)))
            k += 1
    return edges


def _build_graph(rng: random.Random) -> CodeGraph:
    edges = [StaticEdge(a, b, kind, w) for a, b, kind, w in _STORY_EDGES]
    edges += _filler_edges(rng)
    return CodeGraph(_entities(), edges)


def _chain_trace(trace_id, chain, base_t, rng):
    """chain: [(callee, operation)] walked depth-first; first span is the entry."""
    spans = []
    t = base_t + rng.randrange(0, 50_000)
    caller = None
    parent_id = None
    for i, (callee, operation) in enumerate(chain):
        span_id = f"{trace_id}-s{i}"
        spans.append(
            Span(trace_id, span_id, parent_id, caller, callee, operation,
                 t, 30_000 + rng.randrange(0, 20_000))
        )
        parent_id = span_id
        caller = callee
        t += 40_000 + rng.randrange(0, 10_000)
    return spans


def _step_trace(trace_id, entry, steps, base_t, rng):
    """steps: [(caller, callee, operation)], all children of the entry span."""
    spans = []
    t = base_t + rng.randrange(0, 50_000)
    entry_id = f"{trace_id}-s0"
    spans.append(Span(trace_id, entry_id, None, None, entry[0], entry[1], t, 60_000))
    for i, (caller, callee, operation) in enumerate(steps, start=1):
        t += 40_000 + rng.randrange(0, 10_000)
        spans.append(
            Span(trace_id, f"{trace_id}-s{i}", entry_id, caller, callee, operation,
                 t, 30_000 + rng.randrange(0, 20_000))
        )
    return spans


def _build_traces(rng: random.Random) -> tuple[list[Span], list[InstanceSample]]:
    spans: list[Span] = []
    w0, w1, w2 = T0, T0 + WINDOW_US, T0 + 2 * WINDOW_US

    spans += _chain_trace("tm-1", TRANSFER_CHAIN, w0 + 100_000, rng)
    spans += _chain_trace("tm-2", TRANSFER_CHAIN, w0 + 5_000_000, rng)

    gateway = "gameprocessing.gatewayserveradapter.LotteryManagerGateway"
    spans += _step_trace("lt-1", (gateway, "loadTicket"), TICKET_STEPS, w1 + 200_000, rng)
    spans += _step_trace("lt-2", (gateway, "loadTicket"), TICKET_STEPS, w1 + 2_000_000, rng)
    monitor = "services.monitoring.SystemMonitor"
    spans += _step_trace(
        "mon-1",
        (monitor, "sweepHealth"),
        [
            (monitor, "usermanagement.UserAccountFacade", "probeAccounts"),
            (monitor, "gameprocessing.GameCatalog", "probeCatalog"),
            (monitor, "subledger.LedgerEntryService", "probeLedger"),
            (monitor, "services.newsletter.NewsletterDelivery", "probeNewsletter"),
        ],
        w1 + 5_000_000,
        rng,
    )
    promoter = "services.newsletter.NewsletterPromoter"
    spans += _step_trace(
        "nl-1",
        (promoter, "promoteNewsletter"),
        [(promoter, "usermanagement.customer.CustomerDirectory", "selectAudience")],
        w1 + 7_500_000,
        rng,
    )

    spans += _chain_trace("tm-3", TRANSFER_CHAIN, w2 + 1_000_000, rng)
    spans += _step_trace("lt-3", (gateway, "loadTicket"), TICKET_STEPS, w2 + 3_000_000, rng)
    spans += _chain_trace(
        "sb-1",
        [
            ("subledger.ordering.ShoppingCart", "openCart"),
            ("subledger.ordering.OrderService", "checkoutOrder"),
            ("subledger.payment.PaymentProcessManager", "payOrder"),
        ],
        w2 + 5_000_000,
        rng,
    )
    spans += _chain_trace(
        "ct-1",
        [
            ("usermanagement.customer.CustomerCardManager", "issueCard"),
            ("usermanagement.customer.CustomerCardPrinter", "printCard"),
        ],
        w2 + 7_000_000,
        rng,
    )

    samples = [
        # first sample sits at the epoch so the window grid starts exactly there
        InstanceSample("subledger.payment.PaymentProcessManager", w0, 3),
        InstanceSample("subledger.wallet.WalletAccountService", w0 + 700_000, 2),
        InstanceSample(gateway, w1 + 500_000, 12),
        InstanceSample("gameprocessing.lotterygameprocessor.GameProcessManager", w1 + 600_000, 7),
        InstanceSample(monitor, w1 + 700_000, 1),
        InstanceSample("subledger.ordering.ShoppingCart", w2 + 600_000, 5),
        InstanceSample("subledger.ordering.OrderService", w2 + 700_000, 4),
        InstanceSample("subledger.payment.PaymentProcessManager", w2 + 800_000, 6),
    ]
    return spans, samples


def _domain_text() -> str:
    doc = {
        "use_cases": [
            {"id": uc_id, "name": name, "actors": actors} for uc_id, name, actors in _USE_CASES
        ],
        "domain_contexts": [
            {"id": dc_id, "name": name, "use_cases": ucs}
            for dc_id, name, ucs, _ in _DOMAIN_CONTEXTS
        ],
        "bounded_contexts": [
            {
                "id": bc,
                "name": bc,
                "domain_contexts": [dc_id for dc_id, _, _, owner in _DOMAIN_CONTEXTS if owner == bc],
            }
            for bc in ("Customer", "Gaming", "Payment", "Marketing", "Administrative", "Order")
        ],
        "package_usecase_map": [
            {"entity": entity, "use_case": uc} for entity, uc in _PACKAGE_MAP
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _tables_text() -> str:
    doc = {
        "tables": [
            {"name": name, "key": key, "columns": columns} for name, key, columns in _TABLES
        ],
        "accesses": [
            {"use_case": uc, "table": table, "columns": columns, "mode": mode}
            for uc, table, columns, mode in _ACCESSES
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def lottery_fixture(seed: int = 1) -> FixtureBundle:
    """Generate the demo bundle; byte-identical for identical seeds."""
    rng = random.Random(seed)
    graph = _build_graph(rng)
    spans, samples = _build_traces(rng)
    return FixtureBundle(
        graph_text=dump_static_graph(graph),
        domain_text=_domain_text(),
        traces_text=dump_traces(spans, samples),
        tables_text=_tables_text(),
    )


def generate_fixture(name: str, seed: int = 1) -> FixtureBundle:
    if name != "lottery":
        raise ArgumentError(f"unknown fixture: {name}")
    return lottery_fixture(seed)
