from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel

from dgmodcat.linalg.matrix import Matrix


class AxiomCheck(BaseModel):
    name: str
    passed: bool
    witness: Optional[List[int]] = None
    detail: str = ""


class ValidationReport(BaseModel):
    subject: str
    checks: List[AxiomCheck] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[AxiomCheck]:
        return [check for check in self.checks if not check.passed]

    def check(self, name: str) -> AxiomCheck:
        for axiom_check in self.checks:
            if axiom_check.name == name:
                return axiom_check
        raise KeyError(name)

    def render(self) -> List[str]:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for check in self.checks:
            status = "pass" if check.passed else "FAIL"
            line = f"  [{status}] {check.name}"
            if check.witness is not None:
                line += f" witness={check.witness}"
            if check.detail:
                line += f" ({check.detail})"
            lines.append(line)
        return lines


def first_difference(lhs: Matrix, rhs: Matrix) -> Optional[Tuple[int, int]]:
    """Lowest (row, column) where two equal-shaped matrices differ, or None."""
    difference = (lhs - rhs).nonzero_entries()
    if not difference:
        return None
    return min(difference)


def matrix_identity_check(name: str, lhs: Matrix, rhs: Matrix, radices: Sequence[int]) -> AxiomCheck:
    """
    Compare two matrices and report the first failing column decoded into basis indices.

    :param radices: Dimension of each tensor factor the column index encodes, outermost first.
    """
    position = first_difference(lhs, rhs)
    if position is None:
        return AxiomCheck(name=name, passed=True)
    row, column = position
    return AxiomCheck(
        name=name,
        passed=False,
        witness=decode_index(column, radices),
        detail=f"differs at output basis index {row}",
    )


def decode_index(index: int, radices: Sequence[int]) -> List[int]:
    digits = []
    for radix in reversed(radices):
        digits.append(index % radix if radix else 0)
        index = index // radix if radix else 0
    return list(reversed(digits))
