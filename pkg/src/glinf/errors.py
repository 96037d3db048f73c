"""Exception types shared by the whole package."""


class ModulusMismatch(ValueError):
    """Operands live in different residue rings."""


class NotAUnit(ArithmeticError):
    def __init__(self, value, valuation):
        super().__init__(f"{value} is not a unit (valuation {valuation})")
        self.value = value
        self.valuation = valuation


class NotInvertible(ArithmeticError):
    def __init__(self, size, rank_mod_p):
        super().__init__(
            f"matrix of size {size} is singular mod p "
            f"(rank {rank_mod_p}, deficiency {size - rank_mod_p})")
        self.size = size
        self.rank_mod_p = rank_mod_p


class PreconditionError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class UndecidedError(RuntimeError):
    """Raised when an undecided verdict is coerced to bool."""


class RecordError(ValueError):
    """Malformed or non-canonical serialized record."""
