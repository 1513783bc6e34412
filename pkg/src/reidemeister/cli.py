"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .abelian import INFINITE, Infinite, abelian_endo, fixed_count_abelian, parse_abelian, reidemeister_abelian
from .baumslag import (
    BSEndoSpec,
    a_exponent,
    class_witnesses,
    identity_spec,
    twisted_conjugate_word,
    validate_endo,
)
from .catalog import catalog_group
from .characters import (
    character_table,
    column_orthogonality_ok,
    degree_sum_ok,
    fixed_irreducibles,
    modular_consistency_ok,
    row_orthogonality_ok,
)
from .errors import ReidemeisterError
from .extensions import extension_analysis
from .fgw import (
    FUNCTIONAL_ORDER,
    ClassLabel,
    classify,
    element_report,
    functional_value,
    lattice_functional,
    parse_element,
    random_element,
    twisted_conjugate,
    values_matrix,
)
from .groups import (
    EndoMap,
    GroupTable,
    endo_from_element_images,
    endo_from_images,
    group_from_cayley,
    group_from_permutations,
    identity_endo,
    twisted_classes,
)
from .iterates import congruence_check, congruences_ok, reidemeister_sequence

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR = 0, 1, 2
_SAFE_INT = 2**53


class InputError(Exception):
    pass


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    command: str
    inputs_digest: str
    results: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "results": _jsonable(self.results),
            "checks": [asdict(c) for c in self.checks],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            d["command"],
            d["inputs_digest"],
            d.get("results", {}),
            [Check(c["name"], c["ok"], c.get("detail", "")) for c in d.get("checks", [])],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"inputs:  {self.inputs_digest[:16]}"]
        for key, value in _jsonable(self.results).items():
            lines.append(f"{key}: {_short(value)}")
        for c in self.checks:
            tag = "PASS" if c.ok else "FAIL"
            lines.append(f"[{tag}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


def _short(value) -> str:
    text = json.dumps(value) if not isinstance(value, str) else value
    return text if len(text) <= 200 else text[:197] + "..."


def _jsonable(x):
    if isinstance(x, Infinite):
        return "INFINITE"
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= _SAFE_INT else x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return _jsonable(x.item())
    return str(x)


def _digest(command: str, args: argparse.Namespace, files: list[str | None]) -> str:
    h = hashlib.sha256(command.encode())
    for key in sorted(vars(args)):
        if key != "func":
            h.update(f"{key}={getattr(args, key)!r};".encode())
    for f in files:
        if f:
            try:
                h.update(Path(f).read_bytes())
            except OSError as exc:
                raise InputError(f"cannot read {f}: {exc.strerror}") from exc
    return h.hexdigest()


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def load_group(spec: dict) -> GroupTable:
    if not isinstance(spec, dict):
        raise InputError("group file must hold a JSON object")
    kind = spec.get("kind")
    if kind == "cayley":
        table = spec["table"]
        if "order" in spec and int(spec["order"]) != len(table):
            raise InputError(f"declared order {spec['order']} but table has {len(table)} rows")
        return group_from_cayley(table, spec.get("names"))
    if kind == "perm":
        return group_from_permutations(int(spec["degree"]), spec["generators"])
    if kind == "catalog":
        return catalog_group(spec["name"])
    raise InputError(f"unknown group kind {kind!r}; expected cayley, perm or catalog")


def load_endo(G: GroupTable, spec: dict) -> EndoMap:
    if not isinstance(spec, dict):
        raise InputError("endomorphism file must hold a JSON object")
    if spec.get("identity"):
        return identity_endo(G)
    if "element_images" in spec:
        return endo_from_element_images(G, spec["element_images"])
    if "generator_indices" in spec:
        return endo_from_images(G, spec["generator_indices"], spec["generator_images"])
    raise InputError("endomorphism needs element_images or generator_indices/generator_images")


def cmd_finite(args) -> Report:
    rep = Report("finite", _digest("finite", args, [args.group, args.endo, args.subgroup]))
    G = load_group(_load_json(args.group))
    phi = load_endo(G, _load_json(args.endo))
    part = twisted_classes(G, phi)
    R = part.class_count
    rep.results.update(order=G.order, R=R, class_sizes=sorted(len(part.members(c)) for c in range(R)))
    rep.check("classes_partition_group", sum(rep.results["class_sizes"]) == G.order, f"{R} classes")
    if args.burnside:
        ct = character_table(G)
        S, fixed = fixed_irreducibles(ct, phi)
        rep.results.update(S=S, fixed_characters=fixed)
        rep.check("R_equals_S", R == S, f"R = {R}, S = {S}")
    if args.iterates:
        seq = reidemeister_sequence(G, phi, args.iterates)
        rows = congruence_check(seq)
        rep.results.update(sequence=list(seq.values), congruences=[r.to_dict() for r in rows])
        rep.check("moebius_congruences", congruences_ok(rows), f"n <= {args.iterates}")
    if args.subgroup:
        elements = _load_json(args.subgroup)
        if not isinstance(elements, dict) or "elements" not in elements:
            raise InputError('subgroup file must be {"elements": [...]}')
        _, ext = extension_analysis(G, elements["elements"], phi)
        rep.results["extension"] = {
            "R_quotient": ext.r_quotient,
            "R_restricted": ext.r_restricted,
            "fix_total": ext.fix_total,
            "fix_quotient": ext.fix_quotient,
            "fix_restricted": ext.fix_restricted,
            "index": ext.index,
        }
        for name, ok in ext.checks.items():
            if ok is not None:
                rep.check(name, ok)
    return rep


def cmd_abelian(args) -> Report:
    rep = Report("abelian", _digest("abelian", args, [args.presentation, args.matrix]))
    pres = _load_json(args.presentation)
    mat = _load_json(args.matrix)
    A = parse_abelian(pres)
    if not isinstance(mat, dict) or "matrix" not in mat:
        raise InputError('matrix file must be {"matrix": [[...]]}')
    psi = abelian_endo(A, mat["matrix"])
    R = reidemeister_abelian(A, psi)
    fix = fixed_count_abelian(A, psi)
    rep.results.update(group=str(A), R=R, fix=fix)
    if R is not INFINITE:
        rep.check("R_at_least_fix", fix is not INFINITE and R >= fix, f"R = {R}, #Fix = {fix}")
    else:
        rep.check("R_infinite_consistent", True, "Coker(psi - Id) has positive rank")
    if args.iterates:
        seq = reidemeister_sequence(A, psi, args.iterates)
        rows = congruence_check(seq)
        rep.results.update(sequence=list(seq.values), congruences=[r.to_dict() for r in rows])
        if any(r.ok is not None for r in rows):
            rep.check("moebius_congruences", congruences_ok(rows), f"n <= {args.iterates}")
    return rep


def cmd_fgw(args) -> Report:
    rep = Report("fgw", _digest("fgw", args, []))
    if args.element is None and not args.demo:
        raise InputError("give --element m,k,n or --demo")
    if args.element is not None:
        try:
            x = parse_element(args.element)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        info = element_report(x)
        rep.results.update(info)
        expected = int(classify(x) in (ClassLabel.B1, ClassLabel.B3))
        rep.check("lattice_matches_classes", info["lattice"] == expected)
    if args.demo:
        rng = random.Random(args.seed)
        labels = set()
        class_ok = func_ok = lattice_ok = True
        for _ in range(args.samples):
            x, g = random_element(rng), random_element(rng)
            y = twisted_conjugate(x, g)
            cx = classify(x)
            labels.add(cx)
            class_ok &= classify(y) == cx
            func_ok &= all(functional_value(f, y) == functional_value(f, x) for f in FUNCTIONAL_ORDER)
            lattice_ok &= lattice_functional(x) == int(cx in (ClassLabel.B1, ClassLabel.B3))
        M, det = values_matrix()
        rep.results.update(samples=args.samples, labels=sorted(c.value for c in labels), values_matrix=M, det=det)
        rep.check("classify_invariant", class_ok, f"{args.samples} twisted conjugations")
        rep.check("functionals_invariant", func_ok)
        rep.check("lattice_functional", lattice_ok)
        rep.check("values_matrix_nonsingular", det != 0, f"det = {det}")
    return rep


def cmd_bs(args) -> Report:
    rep = Report("bs", _digest("bs", args, [args.endo]))
    if args.endo:
        raw = _load_json(args.endo)
        try:
            spec = BSEndoSpec.from_dict(raw)
        except (KeyError, TypeError) as exc:
            raise InputError(f"spec needs n, image_a, image_b ({exc})") from exc
        if args.n is not None and args.n != spec.n:
            raise InputError(f"--n {args.n} disagrees with spec n = {spec.n}")
    else:
        n = 2 if args.n is None else args.n
        if n < 2:
            raise InputError("B(1,n) needs n > 1")
        spec = identity_spec(n)
    check = validate_endo(spec)
    rep.results.update(spec=spec.to_dict(), validation=check.to_dict())
    rep.check("spec_valid", check.valid, check.reason)
    if not check.valid:
        return rep
    rep.check("k_is_one", check.k == 1, f"k = {check.k}")
    if check.k != 1:
        return rep
    witnesses = class_witnesses(spec, args.witnesses)
    invariants = [a_exponent(w) for w in witnesses]
    rep.results.update(witnesses=witnesses, invariants=invariants)
    rep.check("witness_invariants_distinct", len(set(invariants)) == len(invariants))
    rng = random.Random(args.seed)
    stable = True
    for _ in range(200):
        x = "".join(rng.choice("aAbB") for _ in range(rng.randint(0, 12)))
        g = "".join(rng.choice("aAbB") for _ in range(rng.randint(0, 12)))
        stable &= a_exponent(twisted_conjugate_word(spec, x, g)) == a_exponent(x)
    rep.check("a_exponent_twisted_invariant", stable, "200 random (x, g) pairs")
    return rep


def cmd_chartable(args) -> Report:
    rep = Report("chartable", _digest("chartable", args, [args.group]))
    G = load_group(_load_json(args.group))
    ct = character_table(G)
    rep.results.update(
        order=G.order,
        degrees=list(ct.degrees),
        conductor=ct.conductor,
        class_sizes=list(ct.classes.sizes),
        values=[[str(v) for v in row] for row in ct.values],
    )
    rep.check("row_orthogonality", row_orthogonality_ok(ct))
    rep.check("column_orthogonality", column_orthogonality_ok(ct))
    rep.check("degree_sum", degree_sum_ok(ct), f"sum d^2 = {sum(d * d for d in ct.degrees)}")
    rep.check("modular_consistency", modular_consistency_ok(ct))
    return rep


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit the report as JSON")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks")

    parser = argparse.ArgumentParser(prog="reidemeister", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit the report as JSON")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("finite", parents=[common], help="twisted classes of a finite group endomorphism")
    p.add_argument("group")
    p.add_argument("endo")
    p.add_argument("--burnside", action="store_true", help="also count fixed irreducible characters")
    p.add_argument("--iterates", type=_positive, metavar="N")
    p.add_argument("--subgroup", metavar="FILE", help="normal invariant subgroup for the extension bounds")
    p.set_defaults(func=cmd_finite)

    p = sub.add_parser("abelian", parents=[common], help="finitely generated abelian group and matrix")
    p.add_argument("presentation")
    p.add_argument("matrix")
    p.add_argument("--iterates", type=_positive, metavar="N")
    p.set_defaults(func=cmd_abelian)

    p = sub.add_parser("fgw", parents=[common], help="the four-class semidirect product example")
    p.add_argument("--element", metavar="m,k,n")
    p.add_argument("--demo", action="store_true")
    p.add_argument("--samples", type=_positive, default=1000)
    p.set_defaults(func=cmd_fgw)

    p = sub.add_parser("bs", parents=[common], help="Baumslag-Solitar group B(1,n)")
    p.add_argument("--n", type=int)
    p.add_argument("--endo", metavar="FILE")
    p.add_argument("--witnesses", type=_positive, default=5)
    p.set_defaults(func=cmd_bs)

    p = sub.add_parser("chartable", parents=[common], help="exact character table")
    p.add_argument("group")
    p.set_defaults(func=cmd_chartable)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (InputError, ReidemeisterError, OSError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
