"""Command-line front end.

Exit codes: 0 success (or no violation found), 2 invalid input,
3 free-operation violation found, 4 no free samples drawn.
"""

from __future__ import annotations

import argparse
import re
import sys

import numpy as np

from . import formats
from .channels import apply_channel
from .errors import NoFreeSamplesFound, ValidationError
from .metrics import get_distance
from .qregister import ProductBasis, basis_state, bell_state, maximally_mixed
from .random_states import ginibre_density
from .stinginess import (
    ClassicalComb,
    FreeSetSpec,
    SamplerConfig,
    ViolationFound,
    falsify_free_operation,
    is_free,
    s_classical,
    s_quantum,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VIOLATION = 3
EXIT_NO_FREE_SAMPLES = 4

DEFAULT_WITNESS_PATH = "falsify_witness.json"


class InvalidInput(ValidationError):
    pass


def _emit(args, payload: dict, text_lines) -> None:
    if args.format == "json":
        print(formats.dumps(payload))
    else:
        print("\n".join(text_lines))


def _inputs(args, n: int, **extra) -> dict:
    out = {
        "state": getattr(args, "state", None),
        "basis": args.basis,
        "m": args.m,
        "n": n,
        "distance": get_distance(args.distance).identifier,
    }
    out.update(extra)
    return out


def _witness_lines(w) -> list:
    if w.value.is_infinite:
        return ["witness: every qubit lost"]
    return [
        f"witness: lost = {list(w.minimizing_subset.lost)}, kept = {list(w.minimizing_subset.kept)}, "
        f"kept_bits = {list(w.minimizing_kept_bits)}, distance = {w.min_distance!r}"
    ]


def cmd_sq(args) -> int:
    rho = formats.load_density(args.state)
    basis = formats.load_basis(args.basis, rho.n)
    w = s_quantum(rho, args.m, basis, args.distance, threads=args.threads)
    payload = {"command": "sq", "inputs": _inputs(args, rho.n), **w.to_json()}
    _emit(args, payload, [f"S_Q = {w.value}", f"m = {args.m}, n = {rho.n}, distance = {args.distance}"]
          + _witness_lines(w))
    return EXIT_OK


def cmd_free(args) -> int:
    rho = formats.load_density(args.state)
    basis = formats.load_basis(args.basis, rho.n)
    spec = FreeSetSpec(args.m, args.threshold, basis, args.distance)
    result = is_free(rho, spec, threads=args.threads)
    verdict = "FREE" if result else "NOT-FREE"
    payload = {
        "command": "free",
        "inputs": _inputs(args, rho.n, threshold=spec.threshold),
        "verdict": verdict,
        "free": result.free,
        **result.witness.to_json(),
    }
    cmp = "<=" if result else ">"
    _emit(args, payload, [f"{verdict}: S_Q = {result.witness.value} {cmp} {spec.threshold!r}"]
          + _witness_lines(result.witness))
    return EXIT_OK


def cmd_falsify(args) -> int:
    channel = formats.load_channel(args.channel)
    basis = formats.load_basis(args.basis, channel.n)
    spec = FreeSetSpec(args.m, args.threshold, basis, args.distance)
    sampler = SamplerConfig(max_samples=args.samples, seed=args.seed)
    inputs = _inputs(args, channel.n, channel=args.channel, threshold=spec.threshold,
                     samples=args.samples, seed=args.seed)
    inputs.pop("state")
    try:
        verdict = falsify_free_operation(channel, spec, sampler, threads=args.threads)
    except NoFreeSamplesFound as exc:
        _emit(args, {"command": "falsify", "inputs": inputs, "verdict": "NoFreeSamplesFound",
                     "samples_drawn": exc.samples_drawn},
              [f"NoFreeSamplesFound: {exc}"])
        return EXIT_NO_FREE_SAMPLES
    if isinstance(verdict, ViolationFound):
        out = args.out or DEFAULT_WITNESS_PATH
        formats.save_state(verdict.input_state, out)
        payload = {
            "command": "falsify",
            "inputs": inputs,
            "verdict": "ViolationFound",
            "sample_index": verdict.sample_index,
            "samples_tested": verdict.samples_tested,
            "input_value": verdict.input_value.to_json(),
            "output_value": verdict.output_value.to_json(),
            "witness_path": out,
        }
        _emit(args, payload, [
            f"ViolationFound at sample {verdict.sample_index}",
            f"input S_Q = {verdict.input_value} <= {spec.threshold!r}",
            f"output S_Q = {verdict.output_value} > {spec.threshold!r}",
            f"witness input state written to {out}",
        ])
        return EXIT_VIOLATION
    payload = {
        "command": "falsify",
        "inputs": inputs,
        "verdict": "NoViolationFound",
        "samples_tested": verdict.samples_tested,
        "samples_drawn": verdict.samples_drawn,
    }
    _emit(args, payload, [
        f"NoViolationFound({verdict.samples_tested}): "
        f"{verdict.samples_tested} of {verdict.samples_drawn} drawn states were free"
    ])
    return EXIT_OK


def cmd_sc(args) -> int:
    value = s_classical(ClassicalComb(args.n, args.broken))
    payload = {"command": "sc", "n": args.n, "broken": args.broken,
               "exact": str(value), "value": float(value)}
    _emit(args, payload, [f"S_C = {value} = {float(value)!r}"])
    return EXIT_OK


_BASIS_KIND = re.compile(r"^basis[(:](\d+)\)?$")


def _generate(kind: str, n: int, seed: int):
    if kind == "ginibre":
        return ginibre_density(n, np.random.default_rng(seed))
    if kind == "maximally-mixed":
        return maximally_mixed(n)
    if kind == "bell":
        if n != 2:
            raise InvalidInput(f"bell needs n = 2, got {n}")
        return bell_state()
    match = _BASIS_KIND.match(kind)
    if match:
        return basis_state(ProductBasis.computational(n), int(match.group(1)))
    raise InvalidInput(f"unknown state kind {kind!r}; expected ginibre, basis(i), bell or maximally-mixed")


def cmd_gen(args) -> int:
    state = _generate(args.kind, args.n, args.seed)
    if args.out:
        formats.save_state(state, args.out)
        print(f"wrote {args.kind} state on {args.n} qubits to {args.out}")
    else:
        print(formats.dumps(formats.state_to_obj(state)))
    return EXIT_OK


def cmd_channel_apply(args) -> int:
    channel = formats.load_channel(args.channel)
    rho = formats.load_density(args.state)
    out = apply_channel(channel, rho)
    if args.out:
        formats.save_state(out, args.out)
        print(f"wrote output state to {args.out}")
    else:
        print(formats.dumps(formats.state_to_obj(out)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--threads", type=int, default=1, help="threads for the subset scan")

    measure = argparse.ArgumentParser(add_help=False)
    measure.add_argument("--m", type=int, required=True, help="number of lost qubits")
    measure.add_argument("--basis", help="basis file; computational basis when omitted")
    measure.add_argument("--distance", choices=["trace", "hs"], default="trace")

    parser = argparse.ArgumentParser(prog="stingy", description="Classical and quantum stinginess measures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sq", parents=[common, measure], help="quantum stinginess of a state")
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_sq)

    p = sub.add_parser("free", parents=[common, measure], help="free-set membership")
    p.add_argument("--state", required=True)
    p.add_argument("--threshold", type=float, required=True)
    p.set_defaults(func=cmd_free)

    p = sub.add_parser("falsify", parents=[common, measure], help="search for a free-operation violation")
    p.add_argument("--channel", required=True)
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--samples", type=int, default=SamplerConfig.max_samples)
    p.add_argument("--seed", type=int, default=SamplerConfig.seed)
    p.add_argument("--out", help=f"witness state path on violation (default {DEFAULT_WITNESS_PATH})")
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser("sc", parents=[common], help="classical stinginess of a comb")
    p.add_argument("n", type=int, help="number of teeth")
    p.add_argument("broken", type=int, help="teeth broken before replacement")
    p.set_defaults(func=cmd_sc)

    p = sub.add_parser("gen", help="write a state file")
    p.add_argument("kind", help="ginibre, basis(i), bell or maximally-mixed")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("channel-apply", help="apply a channel file to a state file")
    p.add_argument("--channel", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_channel_apply)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
