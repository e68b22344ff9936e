"""Python surface for the qcas workbench.

Everything heavy lives in the compiled extension; this package just
re-exports it and adds a tiny convenience shim.
"""

from ._qcas import (
    brute_count,
    count_formulas,
    oracle,
    preset_definition,
    preset_names,
    run,
)

__all__ = [
    "brute_count",
    "count_formulas",
    "oracle",
    "preset_definition",
    "preset_names",
    "run",
    "run_checked",
]


def run_checked(args):
    """Run one command line and return stdout, raising on nonzero exit."""
    code, out, err = run(list(args))
    if code != 0:
        raise RuntimeError(f"command failed with exit code {code}: {err.strip()}")
    return out
