class ZdenseError(Exception):
    """Base class for every error raised by the package."""


class InvalidSpec(ZdenseError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid group spec: " + "; ".join(self.problems))


class NotBasisGraded(ZdenseError):
    pass


class NotCommutative(ZdenseError):
    pass


class WrongVariant(ZdenseError):
    pass


class ShapeMismatch(ZdenseError):
    pass


class SpanDeficient(ZdenseError):
    pass


class ExplosionGuard(ZdenseError):
    pass


class NotSquarefree(ZdenseError):
    pass


class NotIrreducible(ZdenseError):
    pass


class NotMonogenic(ZdenseError):
    pass


class PrecisionUnreachable(ZdenseError):
    pass


class SearchExhausted(ZdenseError):
    def __init__(self, coeff_bound, msg=""):
        self.coeff_bound = coeff_bound
        super().__init__(msg or f"no unit of full rank found with |a_i| <= {coeff_bound}")


class RankDeficient(ZdenseError):
    pass


class HorizonUnderflow(ZdenseError):
    pass
