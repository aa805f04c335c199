"""Exact group-connectivity tools for small multigraphs."""
