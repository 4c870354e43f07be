"""Regenerate the JSON fixtures used by the workbench tests.

Every file is written byte-for-byte as the analysis server returns it, so the
workbench tests exercise real wire documents. Run from the repository root:

    python3 frontend/scripts/gen_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from monodecomp.fixtures import lottery_fixture
from monodecomp.server import ProjectStore, create_app

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "test" / "fixtures"

ASYNC_BATCH = {
    "edits": [
        {"op": "mark_async", "from": "Customer", "to": "Payment"},
        {"op": "mark_async", "from": "Gaming", "to": "Payment"},
    ]
}


def write(name: str, payload: bytes) -> None:
    path = FIXTURE_DIR / name
    path.write_bytes(payload)
    print(f"wrote {path.relative_to(Path.cwd())} ({len(payload)} bytes)")


def fetch(client: TestClient, method: str, url: str, json_body=None) -> bytes:
    response = client.request(method, url, json=json_body)
    response.raise_for_status()
    return response.content


def main() -> None:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    bundle = lottery_fixture(seed=1)
    client = TestClient(create_app(ProjectStore()))
    created = client.post(
        "/api/v1/projects",
        json={
            "graph": bundle.graph_text,
            "domain": bundle.domain_text,
            "tables": bundle.tables_text,
            "traces": bundle.traces_text,
        },
    )
    created.raise_for_status()
    project_id = created.json()["id"]
    base = f"/api/v1/projects/{project_id}"

    write("summary.json", fetch(client, "GET", base))
    write("contextmap.json", fetch(client, "GET", f"{base}/contextmap"))
    snapshots = fetch(client, "GET", f"{base}/snapshots")
    write("snapshots.json", snapshots)
    for index, start in enumerate(json.loads(snapshots)["windows"]):
        write(f"layout_w{index}.json", fetch(client, "GET", f"{base}/snapshots/{start}/layout"))
    write("whatif_async.json", fetch(client, "POST", f"{base}/whatif", ASYNC_BATCH))


if __name__ == "__main__":
    main()
