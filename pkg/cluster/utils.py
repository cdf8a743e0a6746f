import json
from pathlib import Path
from typing import Iterable, List, Tuple


def parse_word(text: str) -> Tuple[int, ...]:
    """'1,2,1' -> (1, 2, 1); the empty string and 'e' are the identity."""
    text = text.strip()
    if text in {"", "e"}:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise ValueError(f"Words are comma-separated letters, got {text!r}") from e


def parse_vertices(text: str) -> Tuple[int, ...]:
    return parse_word(text)


def parse_permutation(text: str) -> dict:
    """'1:2,2:1' -> {1: 2, 2: 1}."""
    mapping = {}
    for part in text.split(","):
        try:
            source, target = part.split(":")
            mapping[int(source)] = int(target)
        except ValueError as e:
            raise ValueError(f"Permutations are written i:j,..., got {text!r}") from e
    return mapping


def load_json(path: Path):
    with open(path) as fh:
        return json.load(fh)


def write_json(data, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(exist_ok=True, parents=True)
    with open(path, "w") as fh:
        json.dump(data, fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def load_jsonl(path: Path) -> List[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def write_jsonl(records: Iterable[dict], path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(exist_ok=True, parents=True)
    with open(path, "w") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def exception_debug_str(e: BaseException) -> str:
    """Generates a string representation of the exception chain."""
    exception_chain = [e]
    while e.__cause__ is not None:
        exception_chain.append(e.__cause__)
        e = e.__cause__
    return " <- ".join(repr(exc) for exc in exception_chain)
