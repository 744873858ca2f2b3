from abc import ABC, abstractmethod
from functools import lru_cache
import logging
from typing import Any, Iterator, Union

import numpy as np
from sympy import GF, QQ, Rational, isprime

from dgmodcat.system.constants import PRIME_FIELD_PREFIX, RATIONAL_FIELD_DESCRIPTOR

logger = logging.getLogger(__name__)

Scalar = Union[int, Rational, str]


class BaseField(ABC):
    """
    The ground field k. Elements are sympy domain elements, so all arithmetic is exact.
    """

    @property
    @abstractmethod
    def descriptor(self) -> str:
        """
        Interchange name of the field.

        :return: "Q" or "Fp:<p>"
        """
        pass

    @property
    @abstractmethod
    def domain(self) -> Any:
        """
        The sympy domain backing this field (QQ or GF(p)).
        """
        pass

    @property
    @abstractmethod
    def characteristic(self) -> int:
        pass

    @abstractmethod
    def parse(self, token: Scalar) -> Any:
        """
        Parse a scalar as it appears in an interchange document.

        :param token: A "num/den" string over Q, an integer in [0, p) over F_p.
        :return: Domain element
        """
        pass

    @abstractmethod
    def format(self, element: Any) -> Union[str, int]:
        """
        Canonical interchange form of a domain element.
        """
        pass

    @abstractmethod
    def from_rational(self, value: Rational) -> Any:
        pass

    @property
    def zero(self) -> Any:
        return self.domain.zero

    @property
    def one(self) -> Any:
        return self.domain.one

    def convert(self, value: Any) -> Any:
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Rational):
            return self.from_rational(value)
        if isinstance(value, (int, np.integer)):
            return self.domain(int(value))
        return self.domain.convert(value)

    def sign(self, exponent: int) -> Any:
        """(-1)^exponent as a field element."""
        return self.one if exponent % 2 == 0 else -self.one

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BaseField) and self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.descriptor})"


class RationalField(BaseField):
    @property
    def descriptor(self) -> str:
        return RATIONAL_FIELD_DESCRIPTOR

    @property
    def domain(self) -> Any:
        return QQ

    @property
    def characteristic(self) -> int:
        return 0

    def from_rational(self, value: Rational) -> Any:
        return QQ(int(value.p), int(value.q))

    def parse(self, token: Scalar) -> Any:
        if isinstance(token, bool):
            raise ValueError(f"Not a rational scalar: {token!r}")
        if isinstance(token, int):
            return QQ(token)
        try:
            value = Rational(str(token).strip())
        except (TypeError, ValueError, ZeroDivisionError) as error:
            raise ValueError(f"Not a rational scalar: {token!r}") from error
        if not isinstance(value, Rational):
            raise ValueError(f"Not a rational scalar: {token!r}")
        return self.from_rational(value)

    def format(self, element: Any) -> str:
        numerator = int(QQ.numer(element))
        denominator = int(QQ.denom(element))
        return f"{numerator}/{denominator}"


class PrimeField(BaseField):
    def __init__(self, p: int):
        if not isprime(p):
            logger.error(f"Refusing composite modulus {p}")
            raise ValueError(f"Modulus {p} is not prime, Z/{p} is not a field")
        self.p = int(p)
        self._domain = GF(self.p)

    @property
    def descriptor(self) -> str:
        return f"{PRIME_FIELD_PREFIX}{self.p}"

    @property
    def domain(self) -> Any:
        return self._domain

    @property
    def characteristic(self) -> int:
        return self.p

    def from_rational(self, value: Rational) -> Any:
        if int(value.q) % self.p == 0:
            raise ValueError(f"{value} has no image in F_{self.p}")
        return self._domain(int(value.p)) / self._domain(int(value.q))

    def parse(self, token: Scalar) -> Any:
        if isinstance(token, bool) or not isinstance(token, (int, str)):
            raise ValueError(f"Not an F_{self.p} scalar: {token!r}")
        try:
            value = int(token)
        except ValueError as error:
            raise ValueError(f"Not an F_{self.p} scalar: {token!r}") from error
        if not 0 <= value < self.p:
            raise ValueError(f"F_{self.p} scalars are integers in [0, {self.p}), got {value}")
        return self._domain(value)

    def format(self, element: Any) -> int:
        # sympy's GF uses a symmetric representative
        return int(element) % self.p

    def elements(self) -> Iterator[Any]:
        for value in range(self.p):
            yield self._domain(value)


@lru_cache(maxsize=None)
def get_field(descriptor: Union[str, int]) -> BaseField:
    """
    Look up a field by its interchange name: "Q", "Fp:<p>", or a bare prime.
    """
    if isinstance(descriptor, int):
        return PrimeField(descriptor)
    text = str(descriptor).strip()
    if text == RATIONAL_FIELD_DESCRIPTOR:
        return RationalField()
    if text.startswith(PRIME_FIELD_PREFIX):
        text = text[len(PRIME_FIELD_PREFIX):]
    try:
        return PrimeField(int(text))
    except ValueError as error:
        raise ValueError(f"Unknown field descriptor: {descriptor!r}") from error
