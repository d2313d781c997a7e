"""Command line front end.

Exit codes: 0 property holds / command succeeded, 1 property refuted,
2 input or validation error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import Variety, enumerate_homs
from .coproducts import coproduct
from .documents import (
    dumps,
    envelope,
    hom_payload,
    jsonable,
    load,
    load_kind,
    resolve_L,
    to_document,
)
from .errors import AffsysError, BudgetExceeded
from .spaces import is_t0_space, sierpinski_space
from .systems import (
    QuantaleSierpinski,
    canonical_to_power,
    embed_E,
    enumerate_morphisms,
    in_M,
    is_sober,
    is_t0,
    product_systems,
    pts,
    sierpinski_system,
    spatialize,
    validate_morphism,
)
from .verify import SUITES, GenConfig, run_suite

EXIT_OK, EXIT_REFUTED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Outcome:
    def __init__(self, doc: dict, code: int = EXIT_OK, text: str | None = None):
        self.doc = doc
        self.code = code
        self.text = text


def _report(payload: dict, code: int = EXIT_OK, text: str | None = None) -> Outcome:
    return Outcome(envelope("report", jsonable(payload)), code, text)


def _verdict_outcome(command: str, v, extra: dict | None = None) -> Outcome:
    payload = {"command": command, "holds": bool(v), "reason": v.reason, "witness": v.witness}
    if v.partial:
        payload["partial"] = True
    payload.update(extra or {})
    text = f"{command}: {'holds' if v else 'refuted'}" + ("" if v else f" ({v.reason}; witness {jsonable(v.witness)})")
    return _report(payload, EXIT_OK if v else EXIT_REFUTED, text)


# --------------------------------------------------------------------------
# commands


def cmd_validate(args) -> Outcome:
    kind, obj = load(args.file)
    if kind == "morphism":
        return _verdict_outcome("validate", validate_morphism(obj), {"kind": kind})
    if kind == "system":
        obj.ells  # re-checks every l(x)
    return _report({"command": "validate", "kind": kind, "valid": True}, text=f"valid {kind}")


def cmd_points(args) -> Outcome:
    A = load_kind(args.algebra, "algebra")
    L = load_kind(args.into, "algebra")
    P = pts(A, L)
    return _report(
        {"command": "points", "count": len(P), "points": [hom_payload(p) for p in P]},
        text=f"{len(P)} points\n" + "\n".join(json.dumps(p.named()) for p in P),
    )


def cmd_check(args) -> Outcome:
    kind, obj = load(args.file)
    if kind == "space":
        if args.property != "t0":
            raise AffsysError("sobriety is checked on systems, not spaces")
        return _verdict_outcome("check t0", is_t0_space(obj))
    if kind != "system":
        raise AffsysError(f"check expects a system or space document, got {kind}")
    v = is_t0(obj) if args.property == "t0" else is_sober(obj)
    return _verdict_outcome(f"check {args.property}", v)


def cmd_spatialize(args) -> Outcome:
    return Outcome(to_document(spatialize(load_kind(args.file, "system"))))


def cmd_embed(args) -> Outcome:
    return Outcome(to_document(embed_E(load_kind(args.file, "space"))))


def cmd_sierpinski(args) -> Outcome:
    L = resolve_L(args.L, args.variety)
    if args.space:
        return Outcome(to_document(sierpinski_space(L)))
    sS = sierpinski_system(L)
    if isinstance(sS, QuantaleSierpinski):
        samples = {str(s): sS.kappa(s) for s in ([], [0], [1], [0, 1], [2])}
        return _report(
            {
                "command": "sierpinski",
                "materialized": False,
                "note": "the free unital quantale on one generator is infinite; kappa is an evaluator",
                "points": list(L.names),
                "kappa_samples": {k: [L.names[v] for v in vals] for k, vals in samples.items()},
            },
            text="evaluator only (free algebra is infinite)",
        )
    return Outcome(to_document(sS))


def cmd_product(args) -> Outcome:
    factors = [load_kind(f, "system") for f in args.files]
    P = product_systems(factors)
    return Outcome(to_document(P.system))


def cmd_homs(args) -> Outcome:
    k1, a = load(args.files[0])
    k2, b = load(args.files[1])
    if k1 == k2 == "algebra":
        hs = enumerate_homs(a, b)
        return _report(
            {"command": "homs", "count": len(hs), "homs": [hom_payload(h) for h in hs]}, text=f"{len(hs)} homomorphisms"
        )
    if k1 == k2 == "system":
        ms = enumerate_morphisms(a, b)
        return _report(
            {
                "command": "homs",
                "count": len(ms),
                "morphisms": [
                    {"f": {a.points[x]: b.points[y] for x, y in enumerate(m.f)}, "phi": hom_payload(m.phi)} for m in ms
                ],
            },
            text=f"{len(ms)} system morphisms",
        )
    raise AffsysError("homs expects two algebra documents or two system documents")


def cmd_coproduct(args) -> Outcome:
    factors = [load_kind(f, "algebra") for f in args.files]
    if not factors:
        raise AffsysError("coproduct needs at least one factor")
    C = coproduct(factors[0].variety, factors)
    payload = {
        "command": "coproduct",
        "size": C.algebra.n,
        "coding": C.coding,
        "algebra": to_document(C.algebra)["payload"],
        "injections": [hom_payload(h) for h in C.injections],
    }
    return _report(payload, text=f"coproduct with {C.algebra.n} elements ({C.coding})")


def cmd_canonical(args) -> Outcome:
    s = load_kind(args.file, "system")
    cm = canonical_to_power(s, materialize=args.materialize_powers)
    inj, surj = cm.f_injective(), cm.phi_surjective()
    payload = {
        "command": "canonical",
        "index": [s.A.names[a] for a in range(s.A.n)],
        "f": {s.points[x]: [s.L.names[v] for v in b] for x, b in enumerate(cm.f)},
        "injective": bool(inj),
        "phi_surjective": bool(surj),
        "witness": inj.witness,
        "materialized": cm.morphism is not None,
    }
    if cm.morphism is not None:
        payload["in_M"] = bool(in_M(cm.morphism))
    ok = bool(inj) and bool(surj)
    return _report(payload, EXIT_OK if ok else EXIT_REFUTED, f"canonical map: injective={bool(inj)}, phi onto={bool(surj)}")


def cmd_verify(args) -> Outcome:
    variety = Variety(args.variety)
    L = resolve_L(args.L, variety) if args.L else None
    cfg = GenConfig(
        seed=args.seed,
        variety=variety,
        L=L,
        max_points=args.max_points,
        max_algebra=args.max_algebra,
        instance_count=args.instances,
        materialize_powers=args.materialize_powers,
    )
    report = run_suite(args.suite, cfg)
    return Outcome(envelope("report", report.to_dict()), EXIT_OK if report.ok else EXIT_REFUTED, report.summary())


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affsys", description="Finite affine systems over a fixed algebra L.")
    p.add_argument("--format", choices=["json", "text"], default="json")
    # --format is accepted after the command as well
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[fmt], **kw)

    sub.add_parser = add_parser

    c = sub.add_parser("validate", help="validate a document")
    c.add_argument("file")
    c.set_defaults(func=cmd_validate)

    c = sub.add_parser("points", help="homomorphisms A -> L")
    c.add_argument("--algebra", required=True)
    c.add_argument("--into", required=True)
    c.set_defaults(func=cmd_points)

    c = sub.add_parser("check", help="T0 or sobriety of a system")
    c.add_argument("property", choices=["t0", "sober"])
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("spatialize", help="system -> space (image of kappa)")
    c.add_argument("file")
    c.set_defaults(func=cmd_spatialize)

    c = sub.add_parser("embed", help="space -> system (X, inclusion, tau)")
    c.add_argument("file")
    c.set_defaults(func=cmd_embed)

    c = sub.add_parser("sierpinski", help="the Sierpinski system or space over L")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--system", action="store_true")
    g.add_argument("--space", action="store_true")
    c.add_argument("--L", required=True, help="algebra document or built-in name")
    c.add_argument("--variety", default="frame", help="variety for built-in names")
    c.set_defaults(func=cmd_sierpinski)

    c = sub.add_parser("product", help="product of systems")
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_product)

    c = sub.add_parser("homs", help="homomorphisms between algebras or morphisms between systems")
    c.add_argument("files", nargs=2)
    c.set_defaults(func=cmd_homs)

    c = sub.add_parser("coproduct", help="coproduct of algebras")
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_coproduct)

    c = sub.add_parser("canonical", help="canonical morphism into a power of the Sierpinski system")
    c.add_argument("file")
    c.add_argument("--materialize-powers", action="store_true")
    c.set_defaults(func=cmd_canonical)

    c = sub.add_parser("verify", help="run a named property suite")
    c.add_argument("suite", choices=sorted(SUITES))
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--variety", default="frame", choices=[v.value for v in Variety])
    c.add_argument("--L", default=None, help="algebra document or built-in name")
    c.add_argument("--instances", type=int, default=50)
    c.add_argument("--max-points", type=int, default=4)
    c.add_argument("--max-algebra", type=int, default=6)
    c.add_argument("--materialize-powers", action="store_true")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except BudgetExceeded as e:
        out = _report({"command": args.command, "error": "budget", "message": str(e)}, EXIT_BUDGET, f"budget exceeded: {e}")
    except (AffsysError, OSError, ValueError, KeyError) as e:
        err = {"command": args.command, "error": type(e).__name__, "message": str(e)}
        if getattr(e, "witness", None):
            err["witness"] = e.witness
        out = _report(err, EXIT_INPUT, f"error: {type(e).__name__}: {e}")
    if args.format == "json" or out.text is None:
        sys.stdout.write(dumps(out.doc))
    else:
        sys.stdout.write(out.text + "\n")
    return out.code


if __name__ == "__main__":
    sys.exit(main())
