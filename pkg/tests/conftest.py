"""Shared fixtures: the generated demo bundle and a project built from it."""

import pytest

from monodecomp.fixtures import lottery_fixture
from monodecomp.project import assemble_project


@pytest.fixture(scope="session")
def bundle():
    return lottery_fixture(1)


@pytest.fixture()
def project(bundle):
    return assemble_project(
        bundle.graph_text, bundle.domain_text, bundle.tables_text, bundle.traces_text
    )
