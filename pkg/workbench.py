"""Command-line front end of the cluster workbench.

Usage:
    python workbench.py seed build --cartan A2 --word 1,2,1 --out seed.json
    python workbench.py seed mutate --in seed.json --sequence 1 --dot seed.dot
    python workbench.py seed explore --in seed.json --depth 5
    python workbench.py morphism make --kind freezing --data 1 --seed seed.json --out phi.json
    python workbench.py morphism decompose --in phi.json
    python workbench.py morphism kernel --in phi.json --poly "x1 - 1"
    python workbench.py weyl betas --cartan A3 --word 1,2,1,3,2,1
    python workbench.py richardson morphism --cartan A2 --word 1,2,1 --p 1
    python workbench.py oracle exchange --word 1,2,1,3,2,1 --vertex 2 --mode pit --trials 20 --prng-seed 7

Words are comma-separated 1-based letters ("e" or "" for the identity).
Results are JSON on standard output (or --out); diagnostics go to standard error.
Exit status: 0 on success, 1 on a failed verification or a domain error, 2 on a usage error.
"""

import json
import sys
from argparse import ArgumentParser, Namespace
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

from cluster import laurent, minors, morphism, quiver, richardson, seed, weyl
from cluster.config import Settings
from cluster.errors import ConsistencyError
from cluster.utils import exception_debug_str, load_json, parse_permutation, parse_vertices, parse_word, write_json

SETTINGS = Settings()


def _add_cartan(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--cartan",
        default="A2",
        help="Cartan datum: a preset (A1..A5, D4), a JSON file or an inline JSON matrix.",
    )


def _add_word(parser: ArgumentParser, name: str = "--word", required: bool = True) -> None:
    parser.add_argument(name, type=parse_word, required=required, help="Comma-separated letters, e.g. 1,2,1.")


def _add_out(parser: ArgumentParser) -> None:
    parser.add_argument("--out", "-o", type=Path, default=None, help="Write JSON here instead of standard output.")


def _build_parser() -> ArgumentParser:
    parser = ArgumentParser(description="Exact cluster-algebra workbench.")
    groups = parser.add_subparsers(dest="group", required=True)

    # seed
    seed_parser = groups.add_parser("seed", help="Build, mutate and explore seeds.")
    seed_commands = seed_parser.add_subparsers(dest="command", required=True)
    build = seed_commands.add_parser("build", help="Initial seed of C[N_w] for a reduced word, or of a quiver file.")
    _add_cartan(build)
    _add_word(build, required=False)
    build.add_argument("--quiver", type=Path, default=None, help="Quiver JSON {vertices, mutable, b} instead of a word.")
    build.add_argument("--frozen-invertible", action="store_true", help="Allow negative powers of frozen variables.")
    _add_out(build)
    build.add_argument("--dot", type=Path, default=None, help="Also write the quiver as DOT.")

    mutate = seed_commands.add_parser("mutate", help="Mutate a seed along a vertex sequence.")
    mutate.add_argument("--in", dest="input", type=Path, required=True, help="Seed JSON.")
    mutate.add_argument("--sequence", type=parse_vertices, required=True, help="Comma-separated vertices.")
    _add_out(mutate)
    mutate.add_argument("--dot", type=Path, default=None, help="Also write the mutated quiver as DOT.")

    explore = seed_commands.add_parser("explore", help="Distinct cluster variables up to a mutation depth.")
    explore.add_argument("--in", dest="input", type=Path, required=True, help="Seed JSON.")
    explore.add_argument("--depth", type=int, required=True)
    explore.add_argument("--parallelism", type=int, default=None, help="Worker threads per breadth-first level.")
    explore.add_argument("--progress", action="store_true", help="Show a progress bar.")
    _add_out(explore)

    # morphism
    morphism_parser = groups.add_parser("morphism", help="Cluster morphisms.")
    morphism_commands = morphism_parser.add_subparsers(dest="command", required=True)
    make = morphism_commands.add_parser("make", help="An elementary morphism.")
    make.add_argument("--kind", required=True, choices=morphism.KINDS)
    make.add_argument(
        "--data",
        required=True,
        help="Vertex subset (1,2) or, for similarity, a permutation (1:2,2:1).",
    )
    make.add_argument(
        "--seed",
        dest="seed_path",
        type=Path,
        required=True,
        help="Seed JSON: the target for freezing and embedding, the source for similarity and deleting.",
    )
    _add_out(make)
    for name, text in (
        ("validate", "Check the cluster-morphism conditions."),
        ("decompose", "Factor into deleting, similarity, freezing and embedding."),
        ("image", "Image vertices, checked to be a union of connected components."),
    ):
        command = morphism_commands.add_parser(name, help=text)
        command.add_argument("--in", dest="input", type=Path, required=True, help="Morphism JSON.")
        _add_out(command)
    for name, text in (
        ("kernel", "Whether a Laurent polynomial of the source lies in the kernel."),
        ("apply", "Image of a Laurent polynomial of the source."),
    ):
        command = morphism_commands.add_parser(name, help=text)
        command.add_argument("--in", dest="input", type=Path, required=True, help="Morphism JSON.")
        command.add_argument("--poly", required=True, help='Laurent polynomial in the source variables, e.g. "x1*x2 - 1".')
        _add_out(command)
    commutes = morphism_commands.add_parser("commutes", help="Check commutation with a mutation sequence.")
    commutes.add_argument("--in", dest="input", type=Path, required=True, help="Morphism JSON.")
    commutes.add_argument("--sequence", type=parse_vertices, required=True)
    _add_out(commutes)

    # weyl
    weyl_parser = groups.add_parser("weyl", help="Weyl-group words.")
    weyl_commands = weyl_parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("reduced", "Whether the word is reduced."),
        ("betas", "The roots beta_k of a reduced word."),
        ("frozen", "Positions whose letter does not occur later."),
    ):
        command = weyl_commands.add_parser(name, help=text)
        _add_cartan(command)
        _add_word(command)
        _add_out(command)
    additive = weyl_commands.add_parser("additive", help="Whether w = v u with l(w) = l(v) + l(u).")
    _add_cartan(additive)
    _add_word(additive, "--w")
    _add_word(additive, "--v")
    _add_out(additive)
    bruhat = weyl_commands.add_parser("bruhat", help="Whether v <= w in the Bruhat order.")
    _add_cartan(bruhat)
    _add_word(bruhat, "--v")
    _add_word(bruhat, "--w")
    _add_out(bruhat)

    # richardson
    richardson_parser = groups.add_parser("richardson", help="Open Richardson seeds.")
    richardson_commands = richardson_parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("seed", "The Richardson seed for the prefix of length p."),
        ("morphism", "The specializing morphism from the N_w seed."),
    ):
        command = richardson_commands.add_parser(name, help=text)
        _add_cartan(command)
        _add_word(command)
        command.add_argument("--p", type=int, required=True, help="Length of the prefix v.")
        _add_out(command)
        command.add_argument("--dot", type=Path, default=None, help="Also write the quiver as DOT.")

    # oracle
    oracle_parser = groups.add_parser("oracle", help="Type A generalized-minor oracle.")
    oracle_commands = oracle_parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("minor", "D(u w_i, v w_i) as a minor of the generic unitriangular matrix."),
        ("nonvanishing", "Whether D(u w_i, v w_i) is nonzero, with the Bruhat prediction."),
    ):
        command = oracle_commands.add_parser(name, help=text)
        command.add_argument("--rank", type=int, required=True, help="r for type A_r.")
        _add_word(command, "--u")
        _add_word(command, "--v")
        command.add_argument("--index", type=int, required=True, help="Fundamental index i.")
        _add_out(command)
    exchange = oracle_commands.add_parser("exchange", help="Verify an exchange relation of the N_w seed.")
    _add_word(exchange)
    exchange.add_argument("--vertex", type=int, required=True)
    exchange.add_argument("--mode", default="exact", choices=["exact", "pit"])
    exchange.add_argument("--trials", type=int, default=None)
    exchange.add_argument("--prng-seed", type=int, default=None, help="Required for pit mode.")
    exchange.add_argument("--rank", type=int, default=None, help="r for type A_r; defaults to the largest letter.")
    _add_out(exchange)
    return parser


def _parse_args(argv: Optional[List[str]] = None) -> Namespace:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.group == "seed" and args.command == "build" and (args.word is None) == (args.quiver is None):
        parser.error("seed build needs exactly one of --word and --quiver")
    if args.group == "oracle" and args.command == "exchange" and args.mode == "pit" and args.prng_seed is None:
        parser.error("--prng-seed is required with --mode pit")
    return args


def _emit(data, out: Optional[Path]) -> None:
    if out is None:
        print(json.dumps(data, ensure_ascii=False, indent=2))
    else:
        write_json(data, out)
        print(f"Wrote {out}.", file=sys.stderr)


def _write_dot(q, labels, path: Optional[Path]) -> None:
    if path is not None:
        path.parent.mkdir(exist_ok=True, parents=True)
        path.write_text(quiver.to_dot(q, labels))
        print(f"Wrote {path}.", file=sys.stderr)


def _load_seed(path: Path) -> seed.Seed:
    return seed.from_json(load_json(path))


def _load_morphism(path: Path) -> morphism.ClusterMorphism:
    return morphism.from_json(load_json(path), base_dir=path.parent)


def _run_seed(args: Namespace) -> int:
    if args.command == "build":
        if args.quiver is not None:
            s = seed.initial_seed(quiver.from_json(load_json(args.quiver)), frozen_invertible=args.frozen_invertible)
        else:
            s = richardson.build_nw_seed(weyl.load_cartan(args.cartan), args.word)
            if args.frozen_invertible:
                s = replace(s, frozen_invertible=True)
        _emit(seed.to_json(s), args.out)
        _write_dot(s.quiver, s.labels, args.dot)
    elif args.command == "mutate":
        s = seed.mutate_sequence(_load_seed(args.input), args.sequence)
        _emit(seed.to_json(s), args.out)
        _write_dot(s.quiver, s.labels, args.dot)
    elif args.command == "explore":
        parallelism = args.parallelism if args.parallelism is not None else SETTINGS.parallelism
        result = seed.enumerate_clusters(_load_seed(args.input), args.depth, parallelism, args.progress)
        _emit(result.to_json(), args.out)
    return 0


def _run_morphism(args: Namespace) -> int:
    if args.command == "make":
        s = _load_seed(args.seed_path)
        data = parse_permutation(args.data) if args.kind == "similarity" else parse_vertices(args.data)
        _emit(morphism.to_json(morphism.make_elementary(args.kind, data, s)), args.out)
        return 0
    phi = _load_morphism(args.input)
    if args.command == "validate":
        report = morphism.validate_morphism(phi)
        _emit(report.to_json(), args.out)
        if not report.ok:
            print(f"❗️ Invalid morphism: {report.first}", file=sys.stderr)
            return 1
    elif args.command == "decompose":
        _emit(morphism.decompose(phi).to_json(), args.out)
    elif args.command == "image":
        _emit({"image": sorted(morphism.image_component(phi))}, args.out)
    elif args.command == "kernel":
        f = laurent.parse(args.poly, phi.source.ambient)
        _emit({"poly": str(f), "in_kernel": morphism.kernel_contains(phi, f)}, args.out)
    elif args.command == "apply":
        f = laurent.parse(args.poly, phi.source.ambient)
        image = morphism.apply(phi, f)
        _emit({"poly": str(f), "image": str(image), "terms": laurent.to_json(image)}, args.out)
    elif args.command == "commutes":
        result = morphism.commutes_with_mutation(phi, args.sequence)
        _emit({"sequence": list(args.sequence), "commutes": result}, args.out)
        return 0 if result else 1
    return 0


def _run_weyl(args: Namespace) -> int:
    cartan = weyl.load_cartan(args.cartan)
    if args.command == "reduced":
        reduced = weyl.is_reduced(cartan, args.word)
        _emit({"word": list(args.word), "reduced": reduced, "reduced_word": list(weyl.reduce_word(cartan, args.word))}, args.out)
    elif args.command == "betas":
        betas = weyl.beta_roots(cartan, args.word)
        _emit({"word": list(args.word), "betas": [list(b) for b in betas], "display": [weyl.format_root(b) for b in betas]}, args.out)
    elif args.command == "frozen":
        _emit({"word": list(args.word), "frozen": sorted(weyl.frozen_set(cartan, args.word))}, args.out)
    elif args.command == "additive":
        _emit({"w": list(args.w), "v": list(args.v), "additive": weyl.length_additive(cartan, args.w, args.v)}, args.out)
    elif args.command == "bruhat":
        _emit({"v": list(args.v), "w": list(args.w), "leq": weyl.bruhat_leq(cartan, args.v, args.w)}, args.out)
    return 0


def _run_richardson(args: Namespace) -> int:
    cartan = weyl.load_cartan(args.cartan)
    if args.command == "seed":
        s = richardson.build_richardson_seed(cartan, args.word, args.p)
        _emit(seed.to_json(s), args.out)
        _write_dot(s.quiver, s.labels, args.dot)
    elif args.command == "morphism":
        phi = richardson.richardson_morphism(cartan, args.word, args.p)
        _emit(morphism.to_json(phi), args.out)
        _write_dot(phi.target.quiver, phi.target.labels, args.dot)
    return 0


def _run_oracle(args: Namespace) -> int:
    if args.command == "minor":
        expr = minors.generalized_minor(args.rank, args.u, args.v, args.index)
        _emit(expr.to_json(), args.out)
    elif args.command == "nonvanishing":
        observed = minors.nonvanishing(args.rank, args.u, args.v, args.index)
        predicted = minors.predicted_nonvanishing(args.rank, args.u, args.v, args.index)
        _emit({"nonvanishing": observed, "bruhat_prediction": predicted}, args.out)
        if observed != predicted:
            print("❗️ Warning: nonvanishing disagrees with the Bruhat prediction.", file=sys.stderr)
            return 1
    elif args.command == "exchange":
        trials = args.trials if args.trials is not None else SETTINGS.pit_trials
        report = minors.verify_exchange(args.word, args.vertex, args.mode, trials, args.prng_seed, args.rank)
        _emit(report.to_json(), args.out)
        if not report.result:
            print(f"❗️ Exchange relation failed at vertex {args.vertex}: {report.detail}", file=sys.stderr)
            return 1
    return 0


_RUNNERS = {
    "seed": _run_seed,
    "morphism": _run_morphism,
    "weyl": _run_weyl,
    "richardson": _run_richardson,
    "oracle": _run_oracle,
}


def run(argv: Optional[List[str]] = None) -> int:
    args = _parse_args(argv)
    try:
        return _RUNNERS[args.group](args)
    except (ValueError, ConsistencyError, OSError) as e:
        print(f"Error: {exception_debug_str(e)}", file=sys.stderr)
        return 1


def main():
    global SETTINGS
    SETTINGS = Settings.from_env()
    sys.exit(run())


if __name__ == "__main__":
    main()
