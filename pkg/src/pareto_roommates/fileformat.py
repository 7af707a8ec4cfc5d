"""Line-oriented text format for instances.

    # comments run from '#' to the end of the line; blank lines are ignored
    n
    ranking of agent 1, best first, n integers
    ...
    ranking of agent n
    matching: n integers, entry i is the partner of agent i (i if alone)
"""

from __future__ import annotations

from .model import Instance, TooSmall, validate_matching, validate_profile

__all__ = ["ParseError", "parse_instance", "render_instance", "read_instance"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body


def _integers(number: int, body: str) -> list[int]:
    try:
        return [int(tok) for tok in body.split()]
    except ValueError:
        raise ParseError(f"expected whitespace-separated integers, got {body!r}", number) from None


def parse_instance(text: str) -> Instance:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty instance file")
    number, body = lines[0]
    header = _integers(number, body)
    if len(header) != 1:
        raise ParseError("first line must hold the agent count alone", number)
    n = header[0]
    if n < 3:
        raise TooSmall(f"need at least 3 agents, got {n}")
    if len(lines) < n + 2:
        last = lines[-1][0]
        raise ParseError(f"expected {n} rankings and a matching line", last)
    if len(lines) > n + 2:
        raise ParseError("unexpected content after the matching line", lines[n + 2][0])
    rankings = [_integers(num, b) for num, b in lines[1 : n + 1]]
    partners = _integers(*lines[n + 1])
    return Instance(validate_profile(n, rankings), validate_matching(n, partners))


def render_instance(instance: Instance) -> str:
    rows = [str(instance.n)]
    rows += [" ".join(map(str, r)) for r in instance.profile.rankings]
    rows.append(" ".join(map(str, instance.matching.partner)))
    return "\n".join(rows) + "\n"


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())
