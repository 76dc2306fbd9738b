"""Entry point for running pareto-route as a module or CLI command.

Usage:
    # Run as a module
    python -m pareto_route solve NY-d.gr NY-t.gr --source 1 --target 42

    # After pip install, run as a command
    pareto-route bench manifest.json
"""

from __future__ import annotations

import sys

from .cli import main


def cli() -> None:
    """CLI entry point installed by pip.

    Registered in pyproject.toml as the console script entry point. The
    process exit code is the value returned by `main`.
    """
    sys.exit(main())


if __name__ == "__main__":
    cli()
