from collections.abc import Iterator
from pathlib import Path


def iter_records(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield the non-empty records of a line-oriented input file.

    Parameters
    ----------
    text: str
        The whole file contents.

    Returns
    -------
    Iterator[Tuple[int, List[str]]]
        Pairs of (1-based line number, whitespace-separated tokens). Anything after a ``#`` is a comment;
        blank and comment-only lines are skipped.

    Example
    -------
    >>> list(iter_records("vertices 6  # header\\n\\nsimplex 0 1 2 3 4"))
    [(1, ['vertices', '6']), (3, ['simplex', '0', '1', '2', '3', '4'])]
    """
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
