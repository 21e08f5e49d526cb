"""The .vee configuration file format.

Grammar (whitespace separated tokens, '#' starts a comment):

    dim <n>                                  first non-comment line, once
    vector <q_1> ... <q_n> mult <q or ?sym>  one line per covector
    lambda2 <q>                              optional

where <q> is a rational literal: optional minus, digits, optional /digits.
Multiplicities may be symbolic ('?name'); symbolic files feed the constraint
and search tools instead of the exact checks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .configuration import VConfiguration, build_configuration
from .errors import DimensionMismatch, ParseError, VeeError

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")
_SYMBOL_RE = re.compile(r"^\?[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class FileEntry:
    coords: tuple[Fraction, ...]
    mult: Fraction | None
    symbol: str | None
    line: int = field(compare=False, default=0)


@dataclass(frozen=True)
class ConfigFile:
    dim: int
    entries: tuple[FileEntry, ...]
    lambda2: Fraction | None

    def has_symbols(self) -> bool:
        return any(e.symbol is not None for e in self.entries)

    def symbols(self) -> tuple[str, ...]:
        return tuple(e.symbol for e in self.entries if e.symbol is not None)

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return [e.coords for e in self.entries]

    def build(self) -> VConfiguration:
        if self.has_symbols():
            raise VeeError(
                "configuration has symbolic multiplicities; use the constraint tools"
            )
        return build_configuration(
            self.dim, [(e.coords, e.mult, f"v{k}") for k, e in enumerate(self.entries)]
        )


def _parse_rational(token: str, line: int, column: int) -> Fraction:
    if not _RATIONAL_RE.match(token):
        raise ParseError(f"expected a rational number, got {token!r}", line, column)
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise ParseError("zero denominator", line, column)
        return Fraction(int(num), int(den))
    return Fraction(int(token))


def parse_config_file(text: str) -> ConfigFile:
    dim: int | None = None
    entries: list[FileEntry] = []
    lambda2: Fraction | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        head = tokens[0]
        if head == "dim":
            if dim is not None:
                raise ParseError("duplicate dim directive", lineno, 1)
            if entries or lambda2 is not None:
                raise ParseError("dim must be the first directive", lineno, 1)
            if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                raise ParseError("usage: dim <positive integer>", lineno, 1)
            dim = int(tokens[1])
        elif head == "vector":
            if dim is None:
                raise ParseError("dim must come before vector lines", lineno, 1)
            if len(tokens) != dim + 3 or tokens[-2] != "mult":
                raise DimensionMismatch(
                    f"line {lineno}: expected 'vector <{dim} rationals> mult <value>'"
                )
            coords = tuple(
                _parse_rational(tok, lineno, k + 2) for k, tok in enumerate(tokens[1 : 1 + dim])
            )
            if all(x == 0 for x in coords):
                raise ParseError("zero covector", lineno, 2)
            mtok = tokens[-1]
            if _SYMBOL_RE.match(mtok):
                entries.append(FileEntry(coords, None, mtok[1:], lineno))
            else:
                mult = _parse_rational(mtok, lineno, dim + 3)
                if mult == 0:
                    raise ParseError("zero multiplicity", lineno, dim + 3)
                entries.append(FileEntry(coords, mult, None, lineno))
        elif head == "lambda2":
            if dim is None:
                raise ParseError("dim must come before lambda2", lineno, 1)
            if lambda2 is not None:
                raise ParseError("duplicate lambda2 directive", lineno, 1)
            if len(tokens) != 2:
                raise ParseError("usage: lambda2 <rational>", lineno, 1)
            lambda2 = _parse_rational(tokens[1], lineno, 2)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, 1)

    if dim is None:
        raise ParseError("missing dim directive")
    if not entries:
        raise ParseError("no vector lines")
    return ConfigFile(dim=dim, entries=tuple(entries), lambda2=lambda2)


def render_config_file(cf: ConfigFile) -> str:
    lines = [f"dim {cf.dim}"]
    for e in cf.entries:
        coords = " ".join(str(x) for x in e.coords)
        mult = f"?{e.symbol}" if e.symbol is not None else str(e.mult)
        lines.append(f"vector {coords} mult {mult}")
    if cf.lambda2 is not None:
        lines.append(f"lambda2 {cf.lambda2}")
    return "\n".join(lines) + "\n"


def config_file_from_configuration(
    cfg: VConfiguration, lambda2: Fraction | None = None
) -> ConfigFile:
    entries = tuple(
        FileEntry(coords=e.covector, mult=e.mult, symbol=None, line=i + 2)
        for i, e in enumerate(cfg.entries)
    )
    return ConfigFile(dim=cfg.dim, entries=entries, lambda2=lambda2)
