from dataclasses import dataclass

from core.exceptions import ParameterDomainError


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-12
    max_terms: int = 500
    # above this argument the alternating series loses too many digits
    switch_threshold: float = 20.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ParameterDomainError('rel_tol must be positive')
        if self.max_terms < 10:
            raise ParameterDomainError('max_terms must be >= 10')


@dataclass(frozen=True)
class QuadratureControl:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ParameterDomainError('tolerances must be positive')
        if self.max_subdivisions < 1:
            raise ParameterDomainError('max_subdivisions must be >= 1')
