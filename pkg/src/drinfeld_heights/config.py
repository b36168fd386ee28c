"""Line-oriented ``key = value`` run configuration.

Example::

    # Carlitz module over F_2(t)
    p = 2
    module = t, 1
    beta = 1/t
    S = t, inf

Keys may also be given on the command line, which wins over the file.  The
coefficients of phi_t are listed from tau^0 upward and must start with t.
``modulus`` is the defining polynomial of F_q over F_p as integer
coefficients from the constant term up (required when e > 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.fields import FiniteField, is_prime
from .algebra.parse import parse_places, parse_poly, parse_ratfunc
from .drinfeld import DrinfeldModule
from .errors import ConfigError, DomainError

INT_KEYS = {
    "p": None, "e": 1, "seed": 0, "n_max": 64, "window": 64, "deg_max": 6, "deg_min": None,
    "qdeg_max": 4, "qdeg_min": 0, "place_deg_max": 8, "cap": 64, "workers": 1,
}
TEXT_KEYS = ("modulus", "module", "beta", "alpha", "S", "places", "place", "poly")
KNOWN_KEYS = set(INT_KEYS) | set(TEXT_KEYS)
ALIASES = {"coefficients": "module", "coeffs": "module", "phi_t": "module", "q_poly": "poly"}


def split_top_level(text, seps=",;"):
    """Split on separators that are not inside parentheses."""
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in seps and depth == 0:
            pieces.append((start, text[start:i]))
            start = i + 1
    pieces.append((start, text[start:]))
    return pieces


@dataclass
class Entry:
    value: str
    line: int | None = None      # 1-based, None for command-line values
    column: int = 0              # 0-based column of the value in its line
    source: str = ""


def read_config_text(text, origin="<config>"):
    """Parse the key = value lines into a dict of Entry."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}:{lineno}: expected 'key = value'",
                              len(line) - len(line.lstrip()), raw)
        key, value = line.split("=", 1)
        key = ALIASES.get(key.strip(), key.strip())
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{origin}:{lineno}: unknown key {key!r}",
                              len(line) - len(line.lstrip()), raw)
        col = raw.index("=") + 1 + (len(value) - len(value.lstrip()))
        entries[key] = Entry(value.strip(), lineno, col, raw)
    return entries


def read_config_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return read_config_text(text, origin=str(path))


@dataclass
class RunConfig:
    entries: dict = field(default_factory=dict)
    origin: str = "<config>"

    def override(self, key, value):
        key = ALIASES.get(key, key)
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}")
        self.entries[key] = Entry(str(value))

    def has(self, key):
        return key in self.entries

    def _fail(self, key, exc):
        """Re-raise a parse failure with the line and column of the value."""
        entry = self.entries[key]
        where = f"{self.origin}:{entry.line}: " if entry.line else "command line: "
        msg = str(exc).split(" (at column")[0]
        pos = getattr(exc, "position", None)
        if entry.line is not None:
            col = entry.column + (pos or 0)
            raise ConfigError(f"{where}{key}: {msg}", col, entry.source.rstrip()) from None
        raise ConfigError(f"{where}{key}: {msg}", pos, entry.value) from None

    def _parse(self, key, fn):
        try:
            return fn(self.entries[key].value)
        except (ConfigError, DomainError) as exc:
            self._fail(key, exc)

    def _parse_piece(self, key, offset, text, fn):
        """Parse one comma-separated piece, keeping columns relative to the whole value."""
        try:
            return fn(text)
        except (ConfigError, DomainError) as exc:
            pos = getattr(exc, "position", None)
            lead = len(text) - len(text.lstrip())
            shifted = ConfigError(str(exc).split(" (at column")[0],
                                  offset + (pos if pos is not None else lead))
            self._fail(key, shifted)

    def get_int(self, key):
        if key not in self.entries:
            default = INT_KEYS[key]
            if default is None and key == "p":
                raise ConfigError("the characteristic p is required")
            return default
        def conv(s):
            try:
                return int(s, 10)
            except ValueError:
                raise ConfigError(f"expected an integer, got {s!r}", 0) from None
        value = self._parse(key, conv)
        if value < 0:
            self._fail(key, ConfigError("must be non-negative", 0))
        return value

    def get_text(self, key, default=None):
        return self.entries[key].value if key in self.entries else default

    # --- derived objects -------------------------------------------------------

    def field(self):
        p, e = self.get_int("p"), self.get_int("e")
        if not is_prime(p):
            self._fail("p", ConfigError(f"{p} is not prime", 0))
        if e < 1:
            self._fail("e", ConfigError("e must be at least 1", 0))
        modulus = None
        if e > 1:
            if "modulus" not in self.entries:
                raise ConfigError("a modulus is required when e > 1")

            def conv(s):
                out = []
                for off, piece in split_top_level(s, ", "):
                    if piece.strip():
                        try:
                            out.append(int(piece) % p)
                        except ValueError:
                            raise ConfigError(f"bad coefficient {piece.strip()!r}", off) from None
                return out
            modulus = self._parse("modulus", conv)
        try:
            return FiniteField(p, e, modulus)
        except (ValueError, DomainError) as exc:
            if "modulus" in self.entries:
                self._fail("modulus", ConfigError(str(exc), 0))
            raise ConfigError(str(exc)) from None

    def module(self, F=None):
        F = F or self.field()
        text = self.get_text("module", "carlitz")
        if text.strip().lower() == "carlitz":
            return DrinfeldModule.carlitz(F)
        coeffs = []
        for off, piece in split_top_level(text):
            coeffs.append(self._parse_piece("module", off, piece, lambda s: parse_ratfunc(F, s)))
        try:
            return DrinfeldModule(F, coeffs)
        except DomainError as exc:
            self._fail("module", ConfigError(str(exc), 0))

    def ratfunc(self, key, F, default=None):
        if key not in self.entries:
            if default is None:
                raise ConfigError(f"missing required key {key!r}")
            return parse_ratfunc(F, default)
        return self._parse(key, lambda s: parse_ratfunc(F, s))

    def poly(self, key, F):
        if key not in self.entries:
            raise ConfigError(f"missing required key {key!r}")
        return self._parse(key, lambda s: parse_poly(F, s))

    def places(self, key, F, default=None):
        if key not in self.entries:
            return default
        return self._parse(key, lambda s: parse_places(F, s))

    def place(self, key, F):
        got = self.places(key, F)
        if got is None:
            raise ConfigError(f"missing required key {key!r}")
        if len(got) != 1:
            self._fail(key, ConfigError("expected exactly one place", 0))
        return got[0]


def load_config(path=None, overrides=()):
    """RunConfig from an optional file plus (key, value) overrides."""
    cfg = RunConfig(read_config_file(path), str(path)) if path else RunConfig()
    for key, value in overrides:
        cfg.override(key, value)
    return cfg
