"""Exact scalars: rationals via ``fractions.Fraction`` and residues modulo a prime."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import isprime

from hopf.errors import InvalidParameters


class Residue:
    """An element of F_p, always stored reduced into [0, p)."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int) -> None:
        self.value = value % modulus
        self.modulus = modulus

    def _coerce(self, other: object) -> "Residue":
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise InvalidParameters(f"cannot mix residues mod {self.modulus} and mod {other.modulus}")
            return other
        if isinstance(other, int):
            return Residue(other, self.modulus)
        if isinstance(other, Fraction):
            return Residue(other.numerator, self.modulus) / Residue(other.denominator, self.modulus)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "Residue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: object) -> "Residue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(self.value - o.value, self.modulus)

    def __rsub__(self, other: object) -> "Residue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(o.value - self.value, self.modulus)

    def __mul__(self, other: object) -> "Residue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Residue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.value == 0:
            raise ZeroDivisionError(f"division by zero mod {self.modulus}")
        return Residue(self.value * pow(o.value, -1, self.modulus), self.modulus)

    def __rtruediv__(self, other: object) -> "Residue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def __pow__(self, exponent: int) -> "Residue":
        return Residue(pow(self.value, exponent, self.modulus), self.modulus)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Residue):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} mod {self.modulus}"


Scalar = Union[Fraction, Residue]


@dataclass(frozen=True)
class FieldSpec:
    """The exact field every scalar of one object lives in: Q (characteristic 0) or F_p."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.characteristic != 0 and not (self.characteristic > 1 and isprime(self.characteristic)):
            raise InvalidParameters(f"characteristic must be 0 or a prime, got {self.characteristic}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the ``--field`` syntax: ``q`` or ``p:<prime>``."""
        text = text.strip().lower()
        if text in ("q", "qq", "0"):
            return cls(0)
        if text.startswith("p:"):
            try:
                return cls(int(text[2:]))
            except ValueError:
                pass
        raise InvalidParameters(f"unrecognized field '{text}' (expected q or p:<prime>)")

    @property
    def kind(self) -> str:
        return "rational" if self.characteristic == 0 else "prime"

    @property
    def tag(self) -> str:
        return "q" if self.characteristic == 0 else f"p:{self.characteristic}"

    def __call__(self, value: Union[int, Fraction, Residue, str]) -> Scalar:
        if isinstance(value, str):
            return self.parse_scalar(value)
        if self.characteristic == 0:
            if isinstance(value, Residue):
                raise InvalidParameters("a residue cannot be read as a rational")
            return Fraction(value)
        if isinstance(value, Residue):
            if value.modulus != self.characteristic:
                raise InvalidParameters(f"residue mod {value.modulus} in a field of characteristic {self.characteristic}")
            return value
        if isinstance(value, Fraction):
            return Residue(value.numerator, self.characteristic) / Residue(value.denominator, self.characteristic)
        return Residue(value, self.characteristic)

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def parse_scalar(self, text: str) -> Scalar:
        """Read ``"3/2"``, ``"-1"`` or ``"5 mod 7"``."""
        raw = text.strip()
        if " mod " in raw:
            value, modulus = raw.split(" mod ", 1)
            try:
                v, p = int(value), int(modulus)
            except ValueError as e:
                raise InvalidParameters(f"not an exact scalar: '{raw}'") from e
            if p != self.characteristic:
                raise InvalidParameters(f"'{raw}' does not belong to the field {self.tag}")
            return Residue(v, self.characteristic)
        try:
            return self(Fraction(raw))
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidParameters(f"not an exact scalar: '{raw}'") from e

    def format_scalar(self, value: Scalar) -> str:
        if isinstance(value, Residue):
            return repr(value)
        return str(value)

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"
