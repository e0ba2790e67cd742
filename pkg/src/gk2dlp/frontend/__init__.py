"""Parsers, emitter, external solver adapter, benchmarks and CLI."""
