"""Exception hierarchy for the whole package.

Domain failures (bad input, undefined operation) are distinct from budget
exhaustion (an enumeration hit a caller-supplied cap before closing); the
CLI maps the two groups to different exit codes.
"""


class KacMoodyError(Exception):
    """Base class for all domain errors raised by this package."""


class BudgetError(KacMoodyError):
    """Base class for cap/budget exhaustion; semi-decisions, not failures."""


# --- generalized Cartan matrix validation ---

class GCMError(KacMoodyError):
    pass


class DiagonalNotTwo(GCMError):
    def __init__(self, i: int):
        self.i = i
        super().__init__(f"diagonal entry at index {i} is not 2")


class PositiveOffDiagonal(GCMError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"off-diagonal entry ({i},{j}) is positive")


class AsymmetricZero(GCMError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"entry ({i},{j}) is zero but ({j},{i}) is not")


# --- realizations ---

class RealizationError(KacMoodyError):
    pass


class DependentRoots(RealizationError):
    def __init__(self):
        super().__init__("simple roots are linearly dependent")


class DependentCoroots(RealizationError):
    def __init__(self):
        super().__init__("simple coroots are linearly dependent")


class PairingMismatch(RealizationError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"alpha_{j}(alpha_{i}^v) does not match the Cartan entry ({i},{j})")


class ZeroForm(KacMoodyError):
    def __init__(self, i: int):
        self.i = i
        super().__init__(f"simple root {i} vanishes on the whole lattice")


# --- enumeration budgets ---

class BudgetExceeded(BudgetError):
    def __init__(self, limit: int, what: str = "enumeration"):
        self.limit = limit
        super().__init__(f"{what} exceeded the cap of {limit}")


class TitsConeUndecided(BudgetError):
    def __init__(self, point, budget: int):
        self.point = point
        self.budget = budget
        super().__init__(
            f"Tits-cone membership of {point} undecided within {budget} steps "
            "(indefinite component)"
        )


class CapExceeded(BudgetError):
    def __init__(self, what: str):
        super().__init__(what)


# --- coefficient ring ---

class ZeroSpecialization(KacMoodyError):
    def __init__(self):
        super().__init__("specialization value for a parameter class must be nonzero")


class OddExponent(KacMoodyError):
    def __init__(self):
        super().__init__("eval_sq requires all exponents even (values are given to squares)")


# --- completed algebra ---

class InsufficientSource(KacMoodyError):
    def __init__(self, message: str, needed=None):
        self.needed = needed
        super().__init__(message)


class NotDominant(KacMoodyError):
    def __init__(self, lam):
        self.lam = tuple(lam)
        super().__init__(f"{self.lam} is not dominant")


# --- parahoric ---

class NonSpherical(KacMoodyError):
    def __init__(self, j_zero):
        self.j_zero = tuple(j_zero)
        super().__init__(f"face with J_zero={self.j_zero} is not spherical")


class FaceIsSpherical(KacMoodyError):
    def __init__(self, j_zero):
        self.j_zero = tuple(j_zero)
        super().__init__(f"face with J_zero={self.j_zero} is spherical; no obstruction exists")


class FaceIsMinimal(KacMoodyError):
    def __init__(self):
        super().__init__("J_pos is empty: the face is the minimal one, excluded by hypothesis")


class NotDivisible(KacMoodyError):
    def __init__(self, message: str):
        super().__init__(message)
