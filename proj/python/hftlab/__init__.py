"""Half-line Fourier transforms: evaluation, Taylor tables, radius estimates,
analytic continuations and witness searches.

Functions are given as spec strings, e.g. "chi:alpha=0", "psi:p=0.5",
"polyexp:nu=0,sigma=1" or sums like "sum:(1)*chi:alpha=0+(2)*phi:alpha=1".
Structured results come back as dicts in the same layout as the CLI JSON.
"""

import json as _json

from ._core import (
    DEFAULT_TOL,
    SCHEMA_VERSION,
    HftlabError,
    chi0_continuation,
    cli_run,
    estimate_radius,
    eval,
    factorial_gap,
    format_ledger,
    gap_margin,
    hft_derivative,
    hft_eval,
    normalize_function,
    omega_witness,
    perturb,
    phi_cauchy_table,
    phi_continuation,
    psi_continuation,
    radius_from_cauchy,
    run_verification,
    taylor_table,
    taylor_table_csv,
    theta_witness,
)


def cli(*args):
    """Runs a CLI subcommand and returns the parsed JSON payload.

    Raises HftlabError on a non-zero exit code."""
    code, payload, error = cli_run([str(a) for a in args])
    if code != 0:
        err = _json.loads(error)["error"] if error else {"kind": "unknown", "message": ""}
        exc = HftlabError(err["message"])
        exc.kind = err["kind"]
        exc.exit_code = code
        raise exc
    return _json.loads(payload)


__all__ = [name for name in dir() if not name.startswith("_")]
