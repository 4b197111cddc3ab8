"""Batch verification front-end.

Reads a JSON run configuration (exact rationals as strings, complex
entries as {re, im} records or T_re/T_im grids), executes the requested
pipeline, and writes one report line per check.  The record format is
newline-delimited JSON with the fields {check, anchor, verdict,
witness?}, sorted by check name; reports are byte-identical across runs
with the same configuration and seed.

Exit status: 0 when every check passes, 1 when a check fails, 2 for
configuration or validation problems, 3 for internal assertion failures
(a split mirror verdict, or a matrix identity that must hold by
construction).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional, Sequence

from .bundles import (
    AffineSection,
    ComplexSideObject,
    build_transitions,
    check_integrability,
    check_twisted_compatibility,
    transition_cocycle_report,
)
from .dg import verify_dg_axioms
from .errors import (
    ConfigError,
    MirrorInconsistencyError,
    NonIntegrableObjectError,
    ToolkitError,
)
from .gcs import (
    BField,
    b_transform,
    complex_structure,
    mirror,
    mirror_involution,
    mirror_matrix_direct,
    mirror_symplectic_data,
    natural_pairing,
)
from .gerbe import COMPLEX_SIDE, MIRROR_SIDE, build_gerbe, check_gerbe_axioms
from .linalg import CMatrix, PeriodMatrix, parse_rational, parse_scalar, validate_period
from .symplectic import (
    curvature_matches_background,
    first_chern,
    is_fukaya_object,
    is_lagrangian,
    mirror_match,
    symplectic_object,
)

COMMANDS = (
    "check-gcs",
    "mirror",
    "deform",
    "check-gerbe",
    "check-object",
    "match",
    "dg-verify",
    "suite",
)

FLOAT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Record:
    check: str
    anchor: str
    verdict: str
    witness: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.verdict == "FAIL"

    def to_json(self) -> str:
        payload: Dict[str, str] = {
            "check": self.check,
            "anchor": self.anchor,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            payload["witness"] = self.witness
        return json.dumps(payload, sort_keys=True)

    def to_human(self) -> str:
        line = f"CHECK {self.check} [{self.anchor}] {self.verdict}"
        if self.witness is not None:
            line += f"\n  witness: {self.witness}"
        return line


@dataclass
class RunConfig:
    """Parsed and validated run configuration."""

    period: PeriodMatrix
    tau: CMatrix
    objects: List[dict]
    float_mode: bool
    seed: int
    samples: int


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON: {exc}") from exc


def bundled_config_path() -> str:
    return str(resources.files("gctorus").joinpath("data/golden_n2.json"))


def parse_config(raw: dict) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    version = raw.get("version")
    if version != 1:
        raise ConfigError(f"unsupported config version: {version!r}")
    torus = raw.get("torus")
    if not isinstance(torus, dict) or "n" not in torus:
        raise ConfigError("config needs a torus section with n")
    n = torus["n"]
    if not isinstance(n, int) or n < 1:
        raise ConfigError("torus.n must be a positive integer")
    try:
        if "T" in torus:
            T = CMatrix.from_rows([[parse_scalar(v) for v in row] for row in torus["T"]])
        else:
            T_re = torus["T_re"]
            T_im = torus["T_im"]
            T = CMatrix.from_rows(
                [
                    [
                        parse_scalar({"re": T_re[i][j], "im": T_im[i][j]})
                        for j in range(n)
                    ]
                    for i in range(n)
                ]
            )
        if T.rows != n:
            raise ConfigError("torus matrix size disagrees with n")
        period = validate_period(T)
        deformation = raw.get("deformation") or {}
        tau_grid = deformation.get("tau")
        if tau_grid is None:
            tau = CMatrix.zeros(n, n)
        else:
            tau = CMatrix.from_rows(
                [[parse_rational(v) for v in row] for row in tau_grid]
            )
        objects = []
        for index, spec in enumerate(raw.get("objects") or []):
            a = CMatrix.from_rows(spec["a"])
            c = tuple(parse_rational(v) for v in spec.get("c", ["0"] * n))
            q = tuple(parse_rational(v) for v in spec.get("q", ["0"] * n))
            side = spec.get("side", "both")
            if side not in ("complex", "symplectic", "both"):
                raise ConfigError(f"objects[{index}].side invalid: {side!r}")
            mode = spec.get("mode")
            if mode not in (None, "ordinary", "twisted"):
                raise ConfigError(f"objects[{index}].mode invalid: {mode!r}")
            objects.append(
                {"a": a, "c": c, "q": q, "side": side, "mode": mode, "index": index}
            )
        options = raw.get("options") or {}
        return RunConfig(
            period=period,
            tau=tau,
            objects=objects,
            float_mode=bool(options.get("float_mode", False)),
            seed=int(options.get("seed", 0)),
            samples=int(options.get("samples", 100)),
        )
    except ConfigError:
        raise
    except (ToolkitError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"invalid config: {type(exc).__name__}: {exc}") from exc


# --- pipelines -------------------------------------------------------------------


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def run_check_gcs(cfg: RunConfig) -> List[Record]:
    period = cfg.period
    n = period.n
    J = complex_structure(period)
    size = 4 * n
    eye = CMatrix.identity(size)
    square_ok = J.matrix * J.matrix == -eye
    pairing = natural_pairing(n)
    pairing_ok = J.matrix.transpose() * pairing * J.matrix == pairing

    X, Y = period.re, period.im
    core = Y + X * Y.inverse() * X
    nondeg_ok = not core.det().is_zero()

    K = -(period.matrix.inverse().transpose())
    re_ok = K.real() == -(core.inverse().transpose()) * X.transpose() * Y.inverse().transpose()
    im_ok = K.imag() == core.inverse().transpose()

    return [
        Record("gcs.square", "complex-structure-axioms", _verdict(square_ok)),
        Record("gcs.pairing", "complex-structure-axioms", _verdict(pairing_ok)),
        Record("gcs.nondegenerate", "mirror-existence", _verdict(nondeg_ok)),
        Record("gcs.inverse-parts", "mirror-symplectic-data", _verdict(re_ok and im_ok)),
    ]


def run_mirror(cfg: RunConfig) -> List[Record]:
    period = cfg.period
    J = complex_structure(period)
    mirrored = mirror(J)
    involution_ok = mirror(mirrored).matrix == J.matrix
    matrix_ok = mirrored.matrix == mirror_matrix_direct(period)
    # Raises MirrorInconsistencyError (exit 3) if the factorization breaks.
    data = mirror_symplectic_data(period, cfg.tau)
    return [
        Record("mirror.involution", "mirror-transform", _verdict(involution_ok)),
        Record("mirror.matrix", "mirror-transform", _verdict(matrix_ok)),
        Record("mirror.factorization", "mirror-symplectic-data", "PASS"),
        Record(
            "mirror.data",
            "mirror-symplectic-data",
            "PASS",
            witness=f"omega_mat={data.omega_mat}; b_mat={data.b_mat}",
        ),
    ]


def run_deform(cfg: RunConfig) -> List[Record]:
    period = cfg.period
    J = complex_structure(period)
    field = BField.base_twist(cfg.tau)
    transformed = b_transform(J, field)
    fixed = transformed.matrix == J.matrix
    rigidity_ok = fixed == cfg.tau.is_zero()
    undo_ok = b_transform(transformed, BField.base_twist(-cfg.tau)).matrix == J.matrix
    intertwine_ok = (
        mirror(transformed).matrix == b_transform(mirror(J), field).matrix
    )
    return [
        Record(
            "deform.rigidity",
            "bfield-rigidity",
            _verdict(rigidity_ok),
            witness=f"fixed={str(fixed).lower()}; twist_zero={str(cfg.tau.is_zero()).lower()}",
        ),
        Record("deform.inverse", "bfield-transform", _verdict(undo_ok)),
        Record("deform.intertwine", "mirror-twist-intertwine", _verdict(intertwine_ok)),
    ]


def run_check_gerbe(cfg: RunConfig) -> List[Record]:
    records = []
    for side, tag in ((COMPLEX_SIDE, "complex"), (MIRROR_SIDE, "mirror")):
        gerbe = build_gerbe(cfg.period.n, cfg.tau, side)
        report = check_gerbe_axioms(gerbe, samples=cfg.samples, seed=cfg.seed)
        for result in report.results:
            records.append(
                Record(
                    f"gerbe.{tag}.{result.name}",
                    "gerbe-connection-axioms",
                    _verdict(result.passed),
                    witness=result.witness,
                )
            )
    return records


def _complex_object(cfg: RunConfig, spec: dict) -> ComplexSideObject:
    section = AffineSection(cfg.period.n, spec["a"], spec["c"])
    return ComplexSideObject(section, spec["q"], cfg.tau, cfg.period)


def _symplectic_object(cfg: RunConfig, spec: dict):
    section = AffineSection(cfg.period.n, spec["a"], spec["c"])
    mode = spec["mode"]
    return symplectic_object(section, spec["q"], cfg.tau, cfg.period, mode=mode)


def run_check_object(cfg: RunConfig) -> List[Record]:
    if not cfg.objects:
        raise ConfigError("check-object needs at least one object")
    records = []
    gerbe = build_gerbe(cfg.period.n, cfg.tau, COMPLEX_SIDE)
    for spec in cfg.objects:
        name = f"object{spec['index']}"
        if spec["side"] in ("complex", "both"):
            obj = _complex_object(cfg, spec)
            result = check_integrability(obj)
            records.append(
                Record(
                    f"{name}.integrability-consistency",
                    "twisted-curvature",
                    "PASS",
                    witness=f"integrable={str(result.integrable).lower()}",
                )
            )
            cocycle = transition_cocycle_report(
                build_transitions(obj), samples=cfg.samples, seed=cfg.seed
            )
            records.append(
                Record(
                    f"{name}.transition-cocycle",
                    "bundle-transitions",
                    _verdict(cocycle.passed),
                    witness=cocycle.witness,
                )
            )
            compat = check_twisted_compatibility(
                obj, gerbe, samples=cfg.samples, seed=cfg.seed
            )
            records.append(
                Record(
                    f"{name}.twisted-compatibility",
                    "twisted-connection-gluing",
                    _verdict(compat.passed),
                    witness=compat.witness,
                )
            )
        if spec["side"] in ("symplectic", "both"):
            sobj = _symplectic_object(cfg, spec)
            lag = is_lagrangian(sobj)
            records.append(
                Record(
                    f"{name}.lagrangian-consistency",
                    "lagrangian-graph",
                    "PASS",
                    witness=f"lagrangian={str(lag).lower()}",
                )
            )
            matches = curvature_matches_background(sobj)
            records.append(
                Record(
                    f"{name}.background-consistency",
                    "local-system-curvature",
                    "PASS",
                    witness=f"matches={str(matches).lower()}",
                )
            )
            fukaya = is_fukaya_object(sobj)
            records.append(
                Record(
                    f"{name}.fukaya-consistency",
                    "fukaya-object-conditions",
                    "PASS",
                    witness=f"admissible={str(fukaya).lower()}",
                )
            )
            chern = first_chern(sobj)
            records.append(
                Record(
                    f"{name}.chern-integrality",
                    "chern-integrality-gate",
                    "PASS",
                    witness=(
                        f"integral={str(chern.integral).lower()}; mode={sobj.mode};"
                        f" ch1={chern.form.render()}"
                    ),
                )
            )
    return records


def run_match(cfg: RunConfig) -> List[Record]:
    if not cfg.objects:
        raise ConfigError("match needs at least one object")
    records = []
    for spec in cfg.objects:
        obj = _complex_object(cfg, spec)
        sobj = _symplectic_object(cfg, spec)
        verdict = mirror_match(obj, sobj)  # raises on the impossible split verdict
        records.append(
            Record(f"match{spec['index']}", "mirror-duality", str(verdict))
        )
    return records


def run_dg_verify(cfg: RunConfig, refuse_nonintegrable: bool = True) -> List[Record]:
    if not cfg.objects:
        raise ConfigError("dg-verify needs at least one object")
    objects = [_complex_object(cfg, spec) for spec in cfg.objects]
    try:
        report = verify_dg_axioms(objects, samples=cfg.samples, seed=cfg.seed)
    except NonIntegrableObjectError as exc:
        if refuse_nonintegrable:
            raise ConfigError(f"dg-verify refused: {exc}") from exc
        raise
    return [
        Record(f"dg.{r.name}", "hom-complex-identities", _verdict(r.passed), witness=r.witness)
        for r in report.results
    ]


def run_suite(cfg: RunConfig) -> List[Record]:
    records = []
    records += run_check_gcs(cfg)
    records += run_mirror(cfg)
    records += run_deform(cfg)
    records += run_check_gerbe(cfg)
    if cfg.objects:
        records += run_check_object(cfg)
        records += run_match(cfg)
        integrable = [
            spec
            for spec in cfg.objects
            if check_integrability(_complex_object(cfg, spec)).integrable
        ]
        if integrable:
            sub = RunConfig(
                cfg.period, cfg.tau, integrable, cfg.float_mode, cfg.seed, cfg.samples
            )
            records += run_dg_verify(sub)
    if cfg.float_mode:
        records += run_float_checks(cfg)
    return records


# --- float mode -------------------------------------------------------------------


def _f_mat(m: CMatrix) -> list:
    return m.to_complex()


def _f_mul(a: list, b: list) -> list:
    rows, inner, cols = len(a), len(b), len(b[0])
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def _f_sub(a: list, b: list) -> list:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _f_transpose(a: list) -> list:
    return [list(col) for col in zip(*a)]


def _f_max_abs(a: list) -> float:
    return max(abs(v) for row in a for v in row)


def run_float_checks(cfg: RunConfig) -> List[Record]:
    """Re-run the matrix-level identities in binary64 and compare against
    the exact verdicts; symbolic-form checks are never rerun in floats."""
    period = cfg.period
    n = period.n
    J = _f_mat(complex_structure(period).matrix)
    size = 4 * n
    eye = [[1.0 if i == j else 0.0 for j in range(size)] for i in range(size)]
    square_dev = _f_max_abs(_f_sub(_f_mul(J, J), [[-v for v in row] for row in eye]))
    pairing = _f_mat(natural_pairing(n))
    pairing_dev = _f_max_abs(_f_sub(_f_mul(_f_mul(_f_transpose(J), pairing), J), pairing))
    M = _f_mat(mirror_involution(n))
    mirrored = _f_mul(_f_mul(M, J), M)
    involution_dev = _f_max_abs(_f_sub(_f_mul(_f_mul(M, mirrored), M), J))
    direct = _f_mat(mirror_matrix_direct(period))
    direct_dev = _f_max_abs(_f_sub(mirrored, direct))

    checks = [
        ("float.gcs-square", square_dev),
        ("float.gcs-pairing", pairing_dev),
        ("float.mirror-involution", involution_dev),
        ("float.mirror-matrix", direct_dev),
    ]
    return [
        Record(
            name,
            "float-consistency",
            _verdict(dev < FLOAT_TOLERANCE),
            witness=f"max_abs_deviation={dev:.3e}",
        )
        for name, dev in checks
    ]


# --- driver -----------------------------------------------------------------------


PIPELINES = {
    "check-gcs": run_check_gcs,
    "mirror": run_mirror,
    "deform": run_deform,
    "check-gerbe": run_check_gerbe,
    "check-object": run_check_object,
    "match": run_match,
    "dg-verify": run_dg_verify,
    "suite": run_suite,
}


def run(command: str, cfg: RunConfig, fmt: str, stream) -> int:
    records = PIPELINES[command](cfg)
    records = sorted(records, key=lambda r: r.check)
    if fmt == "records":
        for record in records:
            stream.write(record.to_json() + "\n")
    else:
        for record in records:
            stream.write(record.to_human() + "\n")
        failures = sum(1 for r in records if r.failed)
        stream.write(
            f"SUMMARY {len(records) - failures}/{len(records)} checks passed\n"
        )
    return 1 if any(r.failed for r in records) else 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="gctorus",
        description="Exact verification pipelines for generalized complex torus geometry.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="path to a JSON run configuration")
    parser.add_argument("--seed", type=int, help="override options.seed")
    parser.add_argument("--samples", type=int, help="override options.samples")
    parser.add_argument("--float", action="store_true", help="enable the float demo mode")
    parser.add_argument("--format", choices=("human", "records"), default="human")
    args = parser.parse_args(argv)

    config_path = args.config
    if config_path is None:
        if args.command == "suite":
            config_path = bundled_config_path()
        else:
            parser.error("--config is required for this command")

    try:
        cfg = parse_config(load_config(config_path))
        if args.seed is not None:
            cfg.seed = args.seed
        if args.samples is not None:
            cfg.samples = args.samples
        if args.float:
            cfg.float_mode = True
        return run(args.command, cfg, args.format, sys.stdout)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except MirrorInconsistencyError as exc:
        print(f"internal assertion: {exc}", file=sys.stderr)
        return 3
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
