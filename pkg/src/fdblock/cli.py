"""Command-line front end.

Commands
--------
verify     build an encoding and check its blocks against the reference
sweep      success-probability / discretization-error sweep to CSV
resources  Clifford+T gate counts to CSV
export     deterministic circuit text listing

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 I/O error.
Output files are written atomically (temp file + rename) and contain no
timestamps, so identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass

from . import analysis, resources
from .circuit import MAX_SIM_QUBITS, MAX_UNITARY_QUBITS, export_text
from .errors import FdblockError

OPS = ("laplace", "derivative", "gradient", "divergence", "wave", "lcu")


class UsageError(Exception):
    pass


def _parse_range(text: str) -> list[int]:
    """Parse an int or an inclusive 'a..b' range."""
    if ".." in text:
        lo_text, _, hi_text = text.partition("..")
        try:
            lo, hi = int(lo_text), int(hi_text)
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
        if hi < lo:
            raise UsageError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    try:
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad integer {text!r}") from None


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation: command, operator, ranges, tolerance, output.

    The seed field is reserved; nothing in the pipeline is randomized.
    """

    command: str
    op: str
    dims: list[int] | None
    n_values: list[int]
    family: str | None
    tol: float
    out: str | None
    fmt: str | None
    seed: int | None = None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        if args.tol <= 0:
            raise UsageError("--tol must be positive")
        n_values = _parse_range(args.n)
        dims = _parse_range(args.dim) if args.dim else None
        return cls(
            command=args.command,
            op=args.op,
            dims=dims,
            n_values=n_values,
            family=getattr(args, "family", None),
            tol=args.tol,
            out=args.out,
            fmt=getattr(args, "format", None),
        )

    def single_dim(self) -> int:
        if self.dims is None:
            return resources.op_dims(self.op, None)[0]
        if len(self.dims) != 1:
            raise UsageError("--dim must be a single integer here, got a range")
        return self.dims[0]

    def single_n(self) -> int:
        if len(self.n_values) != 1:
            raise UsageError("--n must be a single integer here, got a range")
        return self.n_values[0]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdblock",
        description="Block encodings of periodic finite-difference operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_family=False, with_format=False):
        p.add_argument("--op", required=True, choices=OPS)
        p.add_argument("--dim", default=None, help="dimension (int or a..b)")
        p.add_argument("--n", required=True, help="qubits per axis (int or a..b)")
        p.add_argument("--tol", type=float, default=1e-12)
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        if with_family:
            p.add_argument("--family", default=None, choices=sorted(analysis.FAMILIES))
        if with_format:
            p.add_argument("--format", default=None, choices=("csv", "txt"))

    add_common(sub.add_parser("verify", help="check encoded blocks"))
    add_common(sub.add_parser("sweep", help="success-probability sweep"), with_family=True, with_format=True)
    add_common(sub.add_parser("resources", help="Clifford+T counts"), with_format=True)
    add_common(sub.add_parser("export", help="circuit text listing"), with_format=True)
    return parser


def _write_output(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fdblock-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _check_sim_cap(num_qubits: int):
    if num_qubits > MAX_SIM_QUBITS:
        raise UsageError(
            f"{num_qubits} qubits exceeds the statevector cap of {MAX_SIM_QUBITS};"
            " choose a smaller --dim/--n"
        )
    if num_qubits > MAX_UNITARY_QUBITS:
        raise UsageError(
            f"{num_qubits} qubits exceeds the full-unitary cap of {MAX_UNITARY_QUBITS}"
            " required for verification"
        )


def cmd_verify(cfg: RunConfig) -> int:
    enc = resources.build_encoding(cfg.op, cfg.single_dim(), cfg.single_n())
    _check_sim_cap(enc.circuit.num_qubits)
    report = analysis.verify_pattern(enc, cfg.tol)
    _write_output(cfg.out, report.summary() + "\n")
    return 0 if report.passed else 1


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.fmt not in (None, "csv"):
        raise UsageError("sweep only writes csv")
    if cfg.op not in ("laplace", "lcu"):
        raise UsageError(f"sweep supports ops 'laplace' and 'lcu', not {cfg.op!r}")
    dim = cfg.single_dim()
    family = cfg.family or ("sinprod" if dim > 1 else "sin1")
    rows = analysis.sweep_success_probability(dim, cfg.n_values, family, op=cfg.op)
    _write_output(cfg.out, analysis.sweep_csv(rows))
    return 0


def cmd_resources(cfg: RunConfig) -> int:
    if cfg.fmt not in (None, "csv"):
        raise UsageError("resources only writes csv")
    rows = resources.resource_sweep(cfg.op, cfg.dims, cfg.n_values)
    _write_output(cfg.out, resources.resources_csv(rows))
    return 0


def cmd_export(cfg: RunConfig) -> int:
    if cfg.fmt not in (None, "txt"):
        raise UsageError("export only writes txt")
    enc = resources.build_encoding(cfg.op, cfg.single_dim(), cfg.single_n())
    _write_output(cfg.out, export_text(enc.circuit))
    return 0


_COMMANDS = {
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "resources": cmd_resources,
    "export": cmd_export,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return _COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FdblockError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
