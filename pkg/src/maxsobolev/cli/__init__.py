"""Command line interface running scenario configurations."""

__all__ = ["list_catalog", "main", "run_config"]

from maxsobolev.cli.main import list_catalog, main, run_config
