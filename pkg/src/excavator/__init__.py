"""Typed event and relation extraction over a document corpus, aggregated
into a filterable temporal/causal graph with popularity timelines and a
read-only HTTP API."""

__version__ = "0.1.0"
