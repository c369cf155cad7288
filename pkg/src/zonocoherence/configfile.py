"""Line-oriented text format for configurations.

::

    # comments start with '#'
    rank 3
    generators 4
    1 0 0
    0 1 1
    1 1 0
    0 0 1
    functional 1 1 1
    labels a b c d

``rank`` is the number of coordinates of each generator.  Entries are
integers, ``p/q`` fractions or decimals.  ``labels`` is optional.
"""
from __future__ import annotations

from .configuration import Configuration, ValidationError
from .rational import as_rational, format_rational

__all__ = ["ConfigError", "parse_config", "serialize_config", "load_config"]


class ConfigError(ValidationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _numbers(tokens: list[str], line: int):
    try:
        return tuple(as_rational(t) for t in tokens)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(str(exc), line) from None


def parse_config(text: str) -> Configuration:
    lines = [(k + 1, raw.split("#", 1)[0].strip()) for k, raw in enumerate(text.splitlines())]
    lines = [(k, s) for k, s in lines if s]
    it = iter(lines)
    dim = count = None
    pi = labels = None
    cols: list[tuple] = []
    col_lines: list[int] = []
    last = 0

    for lineno, s in it:
        last = lineno
        key, *rest = s.split()
        if key == "rank":
            if len(rest) != 1 or not rest[0].isdigit() or int(rest[0]) < 1:
                raise ConfigError("expected 'rank R' with a positive integer R", lineno)
            dim = int(rest[0])
        elif key == "generators":
            if dim is None:
                raise ConfigError("'generators' must come after 'rank'", lineno)
            if len(rest) != 1 or not rest[0].isdigit():
                raise ConfigError("expected 'generators N' with a nonnegative integer N", lineno)
            count = int(rest[0])
            for _ in range(count):
                try:
                    gl, gs = next(it)
                except StopIteration:
                    raise ConfigError(f"expected {count} generator lines", last) from None
                last = gl
                vec = _numbers(gs.split(), gl)
                if len(vec) != dim:
                    raise ConfigError(f"generator has {len(vec)} entries, expected {dim}", gl)
                cols.append(vec)
                col_lines.append(gl)
        elif key == "functional":
            if dim is None:
                raise ConfigError("'functional' must come after 'rank'", lineno)
            pi = _numbers(rest, lineno)
            if len(pi) != dim:
                raise ConfigError(f"functional has {len(pi)} entries, expected {dim}", lineno)
            pi_line = lineno
        elif key == "labels":
            labels = rest
            labels_line = lineno
        else:
            raise ConfigError(f"unknown keyword {key!r}", lineno)

    if dim is None:
        raise ConfigError("missing 'rank' line")
    if count is None:
        raise ConfigError("missing 'generators' section")
    if pi is None:
        raise ConfigError("missing 'functional' line")
    if labels is not None and len(labels) != count:
        raise ConfigError(f"{len(labels)} labels for {count} generators", labels_line)
    try:
        return Configuration(cols, pi, labels, dim=dim)
    except ValidationError as exc:
        message = str(exc)
    # locate the first generator whose addition breaks validity
    names = labels if labels is not None else [str(k + 1) for k in range(count)]
    for k in range(count):
        try:
            Configuration(cols[:k + 1], pi, names[:k + 1], dim=dim)
        except ValidationError:
            raise ConfigError(message, col_lines[k]) from None
    raise ConfigError(message, labels_line if labels is not None else pi_line)


def serialize_config(c: Configuration) -> str:
    for l in c.labels:
        if not l or any(ch.isspace() for ch in l) or "#" in l:
            raise ValueError(f"label {l!r} cannot be written to a config file")
    out = [f"rank {c.dim}", f"generators {c.n}"]
    out += [" ".join(format_rational(x) for x in v) for v in c.vectors]
    out.append("functional " + " ".join(format_rational(x) for x in c.pi))
    if c.n:
        out.append("labels " + " ".join(c.labels))
    return "\n".join(out) + "\n"


def load_config(path: str) -> Configuration:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
