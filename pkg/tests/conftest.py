"""Shared fixtures: fixture corpus, one pipeline run per session, snapshot,
HTTP test client, and bundled resource paths."""

from __future__ import annotations

import json
import pathlib

import pytest
from fastapi.testclient import TestClient

from excavator.corpus import load_corpus
from excavator.extraction import load_gazetteer, load_trigger_lexicon
from excavator.pipeline import (
    PipelineConfig,
    default_data_path,
    load_snapshot,
    run_pipeline,
    train_argument_model,
)
from excavator.service import create_app
from excavator.taxonomy import load_taxonomy

DATA_DIR = pathlib.Path(__file__).parent / "data"
SCHEMA_DIR = pathlib.Path(__file__).parents[1] / "src" / "excavator" / "schemas"


@pytest.fixture(scope="session")
def corpus_path() -> pathlib.Path:
    return DATA_DIR / "corpus.jsonl"


@pytest.fixture(scope="session")
def golden_dir() -> pathlib.Path:
    return DATA_DIR / "golden"


@pytest.fixture(scope="session")
def docs(corpus_path):
    parsed, _skipped = load_corpus(str(corpus_path))
    return parsed


@pytest.fixture(scope="session")
def artifacts_dir(tmp_path_factory, corpus_path) -> pathlib.Path:
    out = tmp_path_factory.mktemp("artifacts")
    run_pipeline(
        PipelineConfig(input_path=str(corpus_path), out_dir=str(out)),
        log=lambda _msg: None,
    )
    return out


@pytest.fixture(scope="session")
def snapshot(artifacts_dir):
    return load_snapshot(str(artifacts_dir))


@pytest.fixture(scope="session")
def client(snapshot) -> TestClient:
    return TestClient(create_app(snapshot))


@pytest.fixture(scope="session")
def taxonomy():
    return load_taxonomy(str(default_data_path("taxonomy.txt")))


@pytest.fixture(scope="session")
def lexicon(taxonomy):
    return load_trigger_lexicon(str(default_data_path("lexicon.tsv")), taxonomy)


@pytest.fixture(scope="session")
def gazetteer():
    return load_gazetteer(str(default_data_path("gazetteer.tsv")))


@pytest.fixture(scope="session")
def arg_model():
    return train_argument_model(str(default_data_path("arg_training.jsonl")))


def load_schema(name: str) -> dict:
    with open(SCHEMA_DIR / f"{name}.schema.json", encoding="utf-8") as fh:
        return json.load(fh)


_SCHEMA_REGISTRY = None


def validate_payload(doc: dict, name: str) -> None:
    """Validate a response body against a bundled schema, resolving the
    cross-file $refs (top_states embeds the timeline schema)."""
    global _SCHEMA_REGISTRY
    if _SCHEMA_REGISTRY is None:
        from referencing import Registry, Resource

        resources = [
            Resource.from_contents(json.loads(path.read_text(encoding="utf-8")))
            for path in SCHEMA_DIR.glob("*.schema.json")
        ]
        _SCHEMA_REGISTRY = Registry().with_resources(
            (res.contents["$id"], res) for res in resources)
    import jsonschema

    jsonschema.validators.Draft202012Validator(
        load_schema(name), registry=_SCHEMA_REGISTRY).validate(doc)
