"""Run the exchange-identity suite against the type A minor oracle.

Usage:
    python verify.py -o results/exchange.jsonl

The suite file is expected to contain one case per line in the format
{"case_id": "xyz", "category": "a2-exact", "cartan": "A2", "word": [1, 2, 1],
 "vertex": 1, "mode": "exact", "trials": null, "prng_seed": null}

This will output a copy of the suite to the output file with added "result",
"detail" and "counterexample" fields, a JSON summary next to it, and a
markdown table of pass rates per category. The exit status is 1 when any case
fails.
"""

import concurrent.futures
import json
import os
import sys
from argparse import ArgumentParser
from collections import defaultdict
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Optional

import tqdm

from cluster.config import Settings
from cluster.errors import ConsistencyError
from cluster.minors import verify_exchange
from cluster.utils import exception_debug_str
from cluster.weyl import load_cartan

_REPO_DIR = Path(__file__).parent


def _parse_args(settings: Settings):
    parser = ArgumentParser(description="Exchange-identity verification suite.")
    parser.add_argument(
        "--data",
        type=Path,
        help="Path of the .jsonl file containing the suite cases.",
        default=_REPO_DIR / "data/exchange-cases.v1.jsonl",
    )
    parser.add_argument(
        "--parallelism",
        type=int,
        default=settings.parallelism,
        help="Number of cases checked concurrently.",
    )
    parser.add_argument(
        "--output",
        "-o",
        type=Path,
        help="Location to save JSONL file of verification results.",
        required=True,
    )
    parser.add_argument(
        "--output_summary",
        type=Path,
        help=(
            "Location to save JSON summarizing verification results, if not specified defaults to --output path with "
            "'_summary' suffix added to filename."
        ),
        default=None,
    )
    parser.add_argument(
        "--categories",
        nargs="*",
        default=None,
        help="Only run cases of these categories.",
    )
    return parser.parse_args()


@dataclass
class Case:
    """A case of the exchange suite, stored as jsonl in the repo."""

    case_id: str
    category: str
    cartan: str
    word: List[int]
    vertex: int
    mode: str
    trials: Optional[int] = None
    prng_seed: Optional[int] = None

    # The fields below are not stored in the suite, but are populated by this script.
    result: Optional[bool] = None
    detail: Optional[str] = None
    counterexample: Optional[Dict[str, str]] = None


def check(case: Case, default_trials: int = 20) -> Case:
    """Runs the oracle and populates the result fields."""
    rank = load_cartan(case.cartan).rank
    trials = case.trials if case.trials is not None else default_trials
    report = verify_exchange(case.word, case.vertex, case.mode, trials, case.prng_seed, rank)
    case.result = report.result
    case.detail = report.detail
    case.counterexample = report.counterexample
    return case


def check_in_parallel(cases: List[Case], parallelism: int = 8, default_trials: int = 20,
                      progress: bool = True) -> List[Case]:
    """Runs the cases in parallel; a domain error fails its case instead of the run."""

    def _check(case: Case) -> Case:
        try:
            return check(case, default_trials)
        except ValueError as e:
            print(f"Case {case.case_id} raised {exception_debug_str(e)}.", file=sys.stderr)
            case.result = False
            case.detail = exception_debug_str(e)
            return case

    out = []
    with concurrent.futures.ThreadPoolExecutor(max_workers=parallelism) as executor:
        futures = {executor.submit(_check, case) for case in cases}
        done = concurrent.futures.as_completed(futures)
        if progress:
            done = tqdm.tqdm(done, total=len(cases))
        for future in done:
            try:
                out.append(future.result())
            except ConsistencyError as e:
                for future in futures:
                    future.cancel()
                raise RuntimeError from e

    return sorted(out, key=lambda case: case.case_id)


def read_cases(data_fname: Path, categories: Optional[List[str]] = None) -> List[Case]:
    cases = []
    with Path(data_fname).open() as fh:
        for line in fh:
            if line.strip():
                cases.append(Case(**json.loads(line)))
    print(f"Read {len(cases)} cases from {data_fname}.", file=sys.stderr)
    if categories:
        cases = [case for case in cases if case.category in categories]
        if not cases:
            print(f"❗️ Warning: No cases in categories {categories}.", file=sys.stderr)
    return cases


def write_cases(cases: List[Case], output_path: Path) -> None:
    output_path = Path(output_path)
    output_path.parent.mkdir(exist_ok=True, parents=True)
    with open(output_path, "w") as fh:
        for case in cases:
            fh.write(json.dumps(asdict(case), ensure_ascii=False) + "\n")
    print(f"Output {len(cases)} cases to {output_path}.", file=sys.stderr)


def _pass_rate(results: List[bool]) -> float:
    return 100 * sum(bool(r) for r in results) / len(results)


def summarise(cases: List[Case]) -> Dict[str, float]:
    category_to_results = defaultdict(list)
    for case in cases:
        category_to_results[case.category].append(case.result)
    print("\n| Category           |  Pass rate   |")
    print("|--------------------|--------------|")

    results = {}
    for category, outcomes in sorted(category_to_results.items()):
        rate_str = f"{_pass_rate(outcomes):.2f}"
        print(f"| {category.ljust(18)} | {rate_str.ljust(12)} |")
        results[category] = float(rate_str)

    if cases:
        rate_str = f"{_pass_rate([case.result for case in cases]):.2f}"
        print(f"| ALL                | {rate_str.ljust(12)} |\n")
        results["overall"] = float(rate_str)
    return results


def summary_path(output: Path, output_summary: Optional[Path] = None) -> Path:
    if output_summary is not None:
        return Path(output_summary)
    out_base, out_ext = os.path.splitext(output)
    return Path(out_base + "_summary" + out_ext)


def main() -> int:
    settings = Settings.from_env()
    args = _parse_args(settings)
    if args.output.exists():
        print(
            f"❗️ Warning: --output {args.output} already exists. Will overwrite.",
            file=sys.stderr,
        )
    cases = read_cases(args.data, args.categories)
    cases = check_in_parallel(
        cases,
        parallelism=args.parallelism,
        default_trials=settings.pit_trials,
        progress=settings.progress,
    )
    write_cases(cases, args.output)
    summary = summarise(cases)

    # Write summary of pass rates to file.
    with open(summary_path(args.output, args.output_summary), "w") as fid:
        json.dump(summary, fid)

    failed = [case.case_id for case in cases if not case.result]
    if failed:
        print(f"❗️ Failed cases: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
