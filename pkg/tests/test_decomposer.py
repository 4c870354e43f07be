"""Scoring, boundary edits, what-if evaluation, and clustering oracles."""

import copy
import json
import math
import random

import pytest

from monodecomp.codegraph import CodeEntity, CodeGraph, StaticEdge
from monodecomp.decomposer import (
    Decomposition,
    DivideContext,
    DuplicateComponent,
    ExtractService,
    MarkAsync,
    MergeContexts,
    MovePackage,
    ScoringWeights,
    SplitPackage,
    apply_edit,
    apply_edits,
    brute_force_suggest,
    combined_graph,
    cross_matrix,
    directed_normalized,
    dump_edit_batch,
    evaluate_whatif,
    load_scoring_weights,
    modularity,
    parse_edit_batch,
    score,
    suggest,
)
from monodecomp.errors import (
    CoverageError,
    EditBatchError,
    EmptyGraphError,
    IncompleteDecompositionError,
    ParseError,
    TooLargeError,
    UnknownReferenceError,
    ValidationError,
)
from monodecomp.tracestore import Span, SnapshotSeries, aggregate_snapshots

W = ScoringWeights()


def build_graph(class_ids, edges, extra_packages=()):
    """Single flat package per class prefix; edges as (from, to, weight)."""
    packages = sorted({cid.split(".")[0] for cid in class_ids} | set(extra_packages))
    entities = [CodeEntity(p, "package", p, None) for p in packages]
    entities += [
        CodeEntity(cid, "class", cid.split(".")[-1], cid.split(".")[0]) for cid in class_ids
    ]
    return CodeGraph(entities, [StaticEdge(a, b, "call", w) for a, b, w in edges])


def series_of(calls, window_us=1000):
    """calls: list of (caller, callee, count) flattened into spans."""
    spans = []
    i = 0
    for caller, callee, count in calls:
        for _ in range(count):
            spans.append(Span("t", f"s{i}", None, caller, callee, "op", i, 1))
            i += 1
    return aggregate_snapshots(spans, [], window_us=max(window_us, i + 1))


EMPTY_SERIES = SnapshotSeries(1000, [])


def oracle_directed(graph, spans, w):
    """Flat recount of normalized directed pair weights from raw inputs."""
    static, dynamic = {}, {}
    for e in graph.edges:
        if e.from_id != e.to_id:
            static[(e.from_id, e.to_id)] = static.get((e.from_id, e.to_id), 0) + e.weight
    for s in spans:
        if s.caller is not None and s.caller != s.callee:
            dynamic[(s.caller, s.callee)] = dynamic.get((s.caller, s.callee), 0) + 1
    ts, td = sum(static.values()), sum(dynamic.values())
    out = {}
    for pair, v in static.items():
        if ts:
            out[pair] = out.get(pair, 0.0) + w.mix_static * v / ts
    for pair, v in dynamic.items():
        if td:
            out[pair] = out.get(pair, 0.0) + w.mix_dynamic * v / td
    return out


def oracle_modularity(cg, partition):
    """Literal Q = (1/2m) sum_ij (A_ij - k_i k_j / 2m) delta(c_i, c_j)."""
    m = cg.total_weight
    if m == 0:
        return 0.0
    adj = {}
    for (u, v), w_uv in cg.weights.items():
        adj[(u, v)] = adj.get((u, v), 0.0) + w_uv
        adj[(v, u)] = adj.get((v, u), 0.0) + w_uv
    deg = cg.degrees()
    q = 0.0
    for i in cg.nodes:
        for j in cg.nodes:
            if partition[i] == partition[j]:
                q += adj.get((i, j), 0.0) - deg[i] * deg[j] / (2 * m)
    return q / (2 * m)


def random_instance(rng, n):
    class_ids = [f"p{i % 3}.C{i}" for i in range(n)]
    edges = []
    for _ in range(rng.randrange(0, 3 * n + 1)):
        a, b = rng.choice(class_ids), rng.choice(class_ids)
        if a != b:
            edges.append((a, b, rng.randrange(1, 9)))
    graph = build_graph(class_ids, edges)
    spans = []
    for i in range(rng.randrange(0, 4 * n)):
        a, b = rng.choice(class_ids), rng.choice(class_ids)
        spans.append(Span("t", f"s{i}", None, a if a != b else None, b, "op", i * 7, 1))
    series = aggregate_snapshots(spans, [], window_us=37)
    return graph, spans, series


# -- combined graph ----------------------------------------------------------


def test_combined_weight_arithmetic():
    graph = build_graph(["p.u", "p.v", "p.x", "p.y"], [("p.u", "p.v", 2), ("p.x", "p.y", 2)])
    series = series_of([("p.u", "p.v", 1), ("p.x", "p.y", 1)])
    cg = combined_graph(graph, series, W)
    assert cg.weights[("p.u", "p.v")] == pytest.approx(0.5 + 0.5)


def test_static_only_weights_proportional():
    graph = build_graph(["p.a", "p.b", "p.c"], [("p.a", "p.b", 3), ("p.b", "p.c", 1)])
    cg = combined_graph(graph, EMPTY_SERIES, W)
    assert cg.weights[("p.a", "p.b")] == pytest.approx(0.75)
    assert cg.weights[("p.b", "p.c")] == pytest.approx(0.25)


def test_opposite_directions_fold_into_one_undirected_edge():
    graph = build_graph(["p.a", "p.b"], [("p.a", "p.b", 1), ("p.b", "p.a", 3)])
    cg = combined_graph(graph, EMPTY_SERIES, W)
    assert cg.weights == {("p.a", "p.b"): pytest.approx(1.0)}


def test_empty_class_set_is_an_error():
    graph = CodeGraph([CodeEntity("p", "package", "p", None)], [])
    with pytest.raises(EmptyGraphError):
        combined_graph(graph, EMPTY_SERIES, W)


def test_zero_weight_graph_with_classes_degrades():
    graph = build_graph(["p.a", "p.b"], [])
    cg = combined_graph(graph, EMPTY_SERIES, W)
    assert cg.weights == {}
    result = suggest(graph, EMPTY_SERIES, W)
    assert result.partition == {"p.a": "p.a", "p.b": "p.b"}
    assert result.modularity == 0.0


def test_directed_weights_match_flat_recount():
    rng = random.Random(11)
    for _ in range(20):
        graph, spans, series = random_instance(rng, rng.randrange(2, 12))
        got = directed_normalized(graph, series, W)
        want = oracle_directed(graph, spans, W)
        assert set(got) == set(want)
        for pair in want:
            assert got[pair] == pytest.approx(want[pair], abs=1e-12)


# -- scoring -------------------------------------------------------------------


def test_single_context_score():
    graph = build_graph(["p.a", "p.b", "p.c"], [("p.a", "p.b", 2), ("p.b", "p.c", 2)])
    d = Decomposition({cls: "ALL" for cls in graph.classes()})
    report = score(d, graph, EMPTY_SERIES, W)
    assert report.per_context_cohesion == {"ALL": 1.0}
    assert report.sync_cross == 0.0
    assert report.async_cross == 0.0
    assert report.granularity_penalty == max(0, 3 - W.g_max)
    assert report.total == pytest.approx(1.0)


def test_two_contexts_without_cross_edges():
    graph = build_graph(
        ["p.a", "p.b", "q.x", "q.y"], [("p.a", "p.b", 4), ("q.x", "q.y", 4)]
    )
    d = Decomposition({"p.a": "P", "p.b": "P", "q.x": "Q", "q.y": "Q"})
    report = score(d, graph, EMPTY_SERIES, W)
    assert report.total == pytest.approx(2.0)
    assert report.sync_cross == 0.0


def test_cohesion_definition_matches_recount():
    rng = random.Random(5)
    for _ in range(15):
        graph, spans, series = random_instance(rng, rng.randrange(2, 14))
        contexts = ["X", "Y", "Z"]
        d = Decomposition({cls: rng.choice(contexts) for cls in graph.classes()})
        report = score(d, graph, series, W)
        directed = oracle_directed(graph, spans, W)
        for ctx in d.contexts():
            internal = sum(
                v for (u, x), v in directed.items() if d.assign[u] == ctx and d.assign[x] == ctx
            )
            external = sum(
                v
                for (u, x), v in directed.items()
                if (d.assign[u] == ctx) != (d.assign[x] == ctx)
            )
            want = internal / (internal + external) if internal + external > 0 else 1.0
            assert report.per_context_cohesion[ctx] == pytest.approx(want, abs=1e-12)
            assert 0.0 <= report.per_context_cohesion[ctx] <= 1.0


def test_score_total_reconstructs_from_components():
    rng = random.Random(9)
    for _ in range(15):
        graph, _, series = random_instance(rng, rng.randrange(2, 14))
        d = Decomposition({cls: rng.choice("AB") for cls in graph.classes()})
        report = score(d, graph, series, W)
        rebuilt = (
            sum(report.per_context_cohesion.values())
            - W.lambda_sync * report.sync_cross
            - W.lambda_async * report.async_cross
            - W.lambda_gran * report.granularity_penalty
            - W.lambda_dup * report.duplication_penalty
        )
        assert report.total == rebuilt


def test_granularity_penalty_counts_small_and_large():
    graph = build_graph([f"p.c{i}" for i in range(6)], [])
    w = ScoringWeights(g_min=2, g_max=3)
    d = Decomposition(
        {"p.c0": "A", "p.c1": "A", "p.c2": "A", "p.c3": "A", "p.c4": "B", "p.c5": "C"}
    )
    # A has 4 classes (1 over g_max), B and C have 1 each (1 under g_min).
    report = score(d, graph, EMPTY_SERIES, w)
    assert report.granularity_penalty == 3.0


def test_unassigned_class_rejected():
    graph = build_graph(["p.a", "p.b"], [])
    with pytest.raises(IncompleteDecompositionError):
        score(Decomposition({"p.a": "A"}), graph, EMPTY_SERIES, W)


def test_duplication_penalty_is_replica_count():
    graph = build_graph(["p.a", "p.b", "q.x"], [("p.a", "q.x", 1)])
    d = Decomposition(
        {"p.a": "A", "p.b": "A", "q.x": "B"},
        duplicated=frozenset({("p.a", "B"), ("p.b", "B")}),
    )
    report = score(d, graph, EMPTY_SERIES, W)
    assert report.duplication_penalty == 2.0


# -- edits ---------------------------------------------------------------------


def fixture_decomposition():
    graph = build_graph(
        ["p.a", "p.b", "q.x", "q.y", "r.m", "s.n"],
        [("p.a", "q.x", 2), ("q.x", "q.y", 4), ("r.m", "p.a", 1), ("p.b", "r.m", 3)],
    )
    d = Decomposition(
        {"p.a": "P", "p.b": "P", "s.n": "P", "q.x": "Q", "q.y": "Q", "r.m": "R"}
    )
    return graph, d


def test_move_package_reassigns_and_inverts():
    graph, d = fixture_decomposition()
    moved = apply_edit(d, MovePackage("p", "Q"), graph)
    assert moved.assign["p.a"] == moved.assign["p.b"] == "Q"
    assert moved.assign["s.n"] == "P"
    back = apply_edit(moved, MovePackage("p", "P"), graph)
    assert back == d


def test_move_to_unknown_context_rejected():
    graph, d = fixture_decomposition()
    with pytest.raises(UnknownReferenceError):
        apply_edit(d, MovePackage("p", "GHOST"), graph)


def test_vanished_context_cannot_be_move_target():
    graph, d = fixture_decomposition()
    moved = apply_edit(d, MovePackage("r", "P"), graph)  # R loses its only class
    assert "R" not in moved.contexts()
    with pytest.raises(UnknownReferenceError):
        apply_edit(moved, MovePackage("r", "R"), graph)


def test_split_package_must_cover_exactly():
    graph, d = fixture_decomposition()
    with pytest.raises(CoverageError):
        apply_edit(d, SplitPackage("q", {"q.x": "P"}), graph)
    with pytest.raises(CoverageError):
        apply_edit(d, SplitPackage("q", {"q.x": "P", "q.y": "P", "p.a": "P"}), graph)
    split = apply_edit(d, SplitPackage("q", {"q.x": "P", "q.y": "R"}), graph)
    assert split.assign["q.x"] == "P" and split.assign["q.y"] == "R"


def test_merge_relabels_both_sides():
    graph, d = fixture_decomposition()
    merged = apply_edit(d, MergeContexts("P", "Q", "PQ"), graph)
    assert merged.contexts() == {"PQ", "R"}
    assert merged.assign["p.a"] == merged.assign["q.x"] == "PQ"


def test_merge_requires_distinct_existing_contexts_and_fresh_target():
    graph, d = fixture_decomposition()
    with pytest.raises(UnknownReferenceError):
        apply_edit(d, MergeContexts("P", "GHOST", "X"), graph)
    with pytest.raises(ValidationError):
        apply_edit(d, MergeContexts("P", "P", "X"), graph)
    with pytest.raises(ValidationError):
        apply_edit(d, MergeContexts("P", "Q", "R"), graph)
    # new_id may reuse one of the merged ids
    merged = apply_edit(d, MergeContexts("P", "Q", "P"), graph)
    assert merged.contexts() == {"P", "R"}


def test_merge_remaps_async_pairs_and_drops_self_pairs():
    graph, d = fixture_decomposition()
    d = apply_edit(d, MarkAsync("P", "Q"), graph)
    d = apply_edit(d, MarkAsync("R", "P"), graph)
    merged = apply_edit(d, MergeContexts("P", "Q", "PQ"), graph)
    assert merged.async_pairs == {("R", "PQ")}


def test_divide_covers_context_with_two_targets():
    graph, d = fixture_decomposition()
    divided = apply_edit(d, DivideContext("Q", {"q.x": "Q1", "q.y": "Q2"}), graph)
    assert divided.assign["q.x"] == "Q1" and divided.assign["q.y"] == "Q2"
    assert "Q" not in divided.contexts()
    with pytest.raises(CoverageError):
        apply_edit(d, DivideContext("Q", {"q.x": "Q1"}), graph)
    with pytest.raises(ValidationError):
        apply_edit(d, DivideContext("Q", {"q.x": "Q1", "q.y": "Q1"}), graph)
    with pytest.raises(UnknownReferenceError):
        apply_edit(d, DivideContext("GHOST", {}), graph)


def test_duplicate_adds_replicas_skipping_home():
    graph, d = fixture_decomposition()
    dup = apply_edit(d, DuplicateComponent("p", ("Q", "P")), graph)
    # home context P replicas are dropped
    assert dup.duplicated == {("p.a", "Q"), ("p.b", "Q")}
    with pytest.raises(UnknownReferenceError):
        apply_edit(d, DuplicateComponent("p", ("GHOST",)), graph)


def test_replica_dropped_when_class_moves_into_it():
    graph, d = fixture_decomposition()
    dup = apply_edit(d, DuplicateComponent("p", ("Q",)), graph)
    moved = apply_edit(dup, MovePackage("p", "Q"), graph)
    assert moved.duplicated == frozenset()


def test_mark_async_validates_contexts():
    graph, d = fixture_decomposition()
    with pytest.raises(UnknownReferenceError):
        apply_edit(d, MarkAsync("P", "GHOST"), graph)
    with pytest.raises(ValidationError):
        apply_edit(d, MarkAsync("P", "P"), graph)
    marked = apply_edit(d, MarkAsync("P", "Q"), graph)
    assert marked.async_pairs == {("P", "Q")}
    again = apply_edit(marked, MarkAsync("P", "Q"), graph)
    assert again.async_pairs == {("P", "Q")}


def test_extract_creates_context_and_moves_classes():
    graph, d = fixture_decomposition()
    extracted = apply_edit(d, ExtractService("NEW", ("q.x", "p.a")), graph)
    assert extracted.assign["q.x"] == extracted.assign["p.a"] == "NEW"
    assert extracted.assign["q.y"] == "Q"
    with pytest.raises(UnknownReferenceError):
        apply_edit(d, ExtractService("NEW", ("ghost",)), graph)
    with pytest.raises(ValidationError):
        apply_edit(d, ExtractService("NEW", ()), graph)


def test_dangling_async_pair_dropped_when_context_vanishes():
    graph, d = fixture_decomposition()
    d = apply_edit(d, MarkAsync("R", "P"), graph)
    moved = apply_edit(d, MovePackage("r", "P"), graph)  # R vanishes
    assert moved.async_pairs == frozenset()


# -- what-if -------------------------------------------------------------------


def test_whatif_empty_batch_delta_zero():
    graph, d = fixture_decomposition()
    before, after, delta = evaluate_whatif(d, [], graph, EMPTY_SERIES, W)
    assert delta == 0.0
    assert before == after


def test_whatif_is_pure():
    graph, d = fixture_decomposition()
    snapshot = copy.deepcopy(d)
    evaluate_whatif(d, [MovePackage("p", "Q"), MarkAsync("R", "Q")], graph, EMPTY_SERIES, W)
    assert d == snapshot


def test_whatif_reports_failing_index():
    graph, d = fixture_decomposition()
    edits = [MarkAsync("P", "Q"), MovePackage("p", "GHOST")]
    with pytest.raises(EditBatchError) as exc:
        evaluate_whatif(d, edits, graph, EMPTY_SERIES, W)
    assert exc.value.index == 1
    assert isinstance(exc.value.cause, UnknownReferenceError)


def test_mark_async_moves_weight_between_buckets():
    graph, d = fixture_decomposition()
    series = series_of([("p.a", "q.x", 5), ("q.y", "r.m", 2)])
    before = score(d, graph, series, W)
    marked = apply_edits(d, [MarkAsync("P", "Q")], graph)
    after = score(marked, graph, series, W)
    pair_weight = cross_matrix(d, graph, series, W)[("P", "Q")]
    assert after.sync_cross == pytest.approx(before.sync_cross - pair_weight, abs=1e-12)
    assert after.async_cross == pytest.approx(pair_weight, abs=1e-12)
    assert after.sync_cross + after.async_cross == pytest.approx(
        before.sync_cross + before.async_cross, abs=1e-12
    )


def test_merge_reduces_sync_cross_by_pair_weight():
    graph, d = fixture_decomposition()
    series = series_of([("p.a", "q.x", 3), ("q.x", "p.b", 1), ("r.m", "q.y", 2)])
    matrix = cross_matrix(d, graph, series, W)
    pair = matrix.get(("P", "Q"), 0.0) + matrix.get(("Q", "P"), 0.0)
    before = score(d, graph, series, W)
    merged = apply_edit(d, MergeContexts("P", "Q", "PQ"), graph)
    after = score(merged, graph, series, W)
    assert after.sync_cross == pytest.approx(before.sync_cross - pair, abs=1e-12)


def test_randomized_conservation_suite():
    rng = random.Random(77)
    for _ in range(30):
        graph, _, series = random_instance(rng, rng.randrange(3, 12))
        classes = graph.classes()
        d = Decomposition({cls: rng.choice("ABC") for cls in classes})
        total_mass = combined_graph(graph, series, W).total_weight
        report = score(d, graph, series, W)
        internal_mass = sum(
            v
            for (u, x), v in directed_normalized(graph, series, W).items()
            if d.assign[u] == d.assign[x]
        )
        assert internal_mass + report.sync_cross + report.async_cross == pytest.approx(
            total_mass, abs=1e-12
        )
        # random edit keeps the combined graph untouched
        ctxs = sorted(d.contexts())
        edit = rng.choice(
            [
                MovePackage(rng.choice(graph.root_packages()), rng.choice(ctxs)),
                MarkAsync(*rng.sample(ctxs, 2)) if len(ctxs) >= 2 else None,
                ExtractService("EX", tuple(rng.sample(classes, 1))),
            ]
        )
        if edit is None:
            continue
        edited = apply_edit(d, edit, graph)
        assert combined_graph(graph, series, W).total_weight == total_mass
        report2 = score(edited, graph, series, W)
        internal2 = sum(
            v
            for (u, x), v in directed_normalized(graph, series, W).items()
            if edited.assign[u] == edited.assign[x]
        )
        assert internal2 + report2.sync_cross + report2.async_cross == pytest.approx(
            total_mass, abs=1e-12
        )


# -- clustering ----------------------------------------------------------------


def test_two_cliques_one_weak_bridge():
    classes = [f"m.a{i}" for i in range(3)] + [f"m.b{i}" for i in range(3)]
    edges = [
        ("m.a0", "m.a1", 5),
        ("m.a0", "m.a2", 5),
        ("m.a1", "m.a2", 5),
        ("m.b0", "m.b1", 5),
        ("m.b0", "m.b2", 5),
        ("m.b1", "m.b2", 5),
        ("m.a0", "m.b0", 1),
    ]
    graph = build_graph(classes, edges)
    result = suggest(graph, EMPTY_SERIES, W)
    clusters = {}
    for cls, cluster in result.partition.items():
        clusters.setdefault(cluster, set()).add(cls)
    assert sorted(clusters.values(), key=sorted) == [
        {"m.a0", "m.a1", "m.a2"},
        {"m.b0", "m.b1", "m.b2"},
    ]
    brute = brute_force_suggest(graph, EMPTY_SERIES, W)
    assert brute.partition == result.partition
    assert brute.modularity == pytest.approx(result.modularity, abs=1e-12)


def test_single_node_single_cluster():
    graph = build_graph(["p.only"], [])
    result = suggest(graph, EMPTY_SERIES, W)
    assert result.partition == {"p.only": "p.only"}
    assert result.modularity == 0.0
    brute = brute_force_suggest(graph, EMPTY_SERIES, W)
    assert brute.partition == {"p.only": "p.only"}


def test_complete_uniform_k4_matches_brute_force():
    classes = [f"p.n{i}" for i in range(4)]
    edges = [(a, b, 1) for i, a in enumerate(classes) for b in classes[i + 1 :]]
    graph = build_graph(classes, edges)
    greedy = suggest(graph, EMPTY_SERIES, W)
    brute = brute_force_suggest(graph, EMPTY_SERIES, W)
    assert abs(greedy.modularity - brute.modularity) <= 1e-9


def test_partition_enumerator_counts_bell_numbers():
    from monodecomp.decomposer import _set_partitions

    assert sum(1 for _ in _set_partitions(list("a"))) == 1
    assert sum(1 for _ in _set_partitions(list("abcd"))) == 15
    assert sum(1 for _ in _set_partitions(list("abcdefgh"))) == 4140


def test_brute_force_rejects_large_inputs():
    graph = build_graph([f"p.c{i}" for i in range(9)], [])
    with pytest.raises(TooLargeError):
        brute_force_suggest(graph, EMPTY_SERIES, W)


def test_greedy_vs_brute_force_on_random_graphs():
    rng = random.Random(2024)
    for _ in range(15):
        graph, _, series = random_instance(rng, rng.randrange(2, 9))
        cg = combined_graph(graph, series, W)
        greedy = suggest(graph, series, W)
        brute = brute_force_suggest(graph, series, W)
        assert greedy.modularity <= brute.modularity + 1e-12
        assert -0.5 <= greedy.modularity <= 1.0
        assert oracle_modularity(cg, greedy.partition) == pytest.approx(
            greedy.modularity, abs=1e-9
        )
        assert oracle_modularity(cg, brute.partition) == pytest.approx(
            brute.modularity, abs=1e-9
        )


def test_suggest_deterministic():
    rng = random.Random(31)
    graph, _, series = random_instance(rng, 10)
    a = suggest(graph, series, W)
    b = suggest(graph, series, W)
    assert a == b


def test_suggest_accepts_seed_partition():
    classes = ["p.a", "p.b", "p.c", "p.d"]
    graph = build_graph(classes, [("p.a", "p.b", 9), ("p.c", "p.d", 9), ("p.b", "p.c", 1)])
    seed = {"p.a": "x", "p.b": "x", "p.c": "y", "p.d": "y"}
    result = suggest(graph, EMPTY_SERIES, W, seed_partition=seed)
    clusters = set(result.partition.values())
    assert clusters == {"p.a", "p.c"}
    from monodecomp.errors import ArgumentError

    with pytest.raises(ArgumentError):
        suggest(graph, EMPTY_SERIES, W, seed_partition={"p.a": "x"})


# -- weights & wire format -------------------------------------------------------


def test_default_weights():
    assert (W.lambda_sync, W.lambda_async, W.lambda_gran, W.lambda_dup) == (1.0, 0.3, 0.1, 0.5)
    assert (W.g_min, W.g_max) == (2, 40)
    assert (W.mix_static, W.mix_dynamic) == (1.0, 1.0)


def test_load_weights_overrides_subset():
    w = load_scoring_weights('{"lambda_gran": 0.4, "g_max": 10}')
    assert w.lambda_gran == 0.4
    assert w.g_max == 10
    assert w.lambda_sync == 1.0


def test_load_weights_rejects_unknown_and_invalid():
    with pytest.raises(ParseError):
        load_scoring_weights('{"nope": 1}')
    with pytest.raises(ValidationError):
        load_scoring_weights('{"mix_static": 0, "mix_dynamic": 0}')
    with pytest.raises(ValidationError):
        load_scoring_weights('{"lambda_sync": -1}')


def test_parse_edit_batch_all_ops():
    doc = {
        "edits": [
            {"op": "move_package", "package": "p", "context": "A"},
            {"op": "mark_async", "from": "A", "to": "B"},
            {"op": "merge", "a": "A", "b": "B", "new_id": "AB"},
            {"op": "divide", "context": "AB", "assign": {"p.x": "L", "p.y": "R"}},
            {"op": "duplicate", "package": "p", "targets": ["L", "R"]},
            {"op": "split_package", "package": "p", "assign": {"p.x": "L"}},
            {"op": "extract", "new_context": "N", "classes": ["p.x"]},
        ]
    }
    edits = parse_edit_batch(json.dumps(doc))
    assert [type(e).__name__ for e in edits] == [
        "MovePackage",
        "MarkAsync",
        "MergeContexts",
        "DivideContext",
        "DuplicateComponent",
        "SplitPackage",
        "ExtractService",
    ]
    again = parse_edit_batch(dump_edit_batch(edits))
    assert again == edits


def test_parse_edit_batch_rejects_bad_shapes():
    with pytest.raises(ParseError):
        parse_edit_batch('{"edits": [{"op": "teleport"}]}')
    with pytest.raises(ParseError):
        parse_edit_batch('{"edits": [{"op": "merge", "a": "A"}]}')
    with pytest.raises(ParseError):
        parse_edit_batch('{"edits": [{"op": "move_package", "package": "p", "context": "A", "x": 1}]}')
    with pytest.raises(ParseError):
        parse_edit_batch('{"batch": []}')
    with pytest.raises(ParseError):
        parse_edit_batch("not json")
