'''
define the errors raised while building schemes, eigenmatrices and designs
'''

from collections import Counter

from typing import Self


def _str_rows(rows) -> str:
    return f"[{', '.join(str(list(row)) for row in rows)}]"


class SchemeForgeError(ValueError):
    '''
    base class defining the type of errors thrown by the scheme_forge module
    '''

    loc: tuple[str, ...]

    def __init__(self, *args):
        super().__init__(*args)
        self.loc = tuple()

    def under(self, parent_loc: str) -> Self:
        '''
        a copy of this error located one step deeper, for re-raising from a caller:
        raise e.under('cyclotomic_eigenmatrix') from e.__cause__
        '''

        located = type(self)(*self.args)
        located.loc = (parent_loc, *self.loc)
        return located

    def _format(self, **info) -> str:
        return '\n'.join((
            'Error occurred while computing with an association scheme',
            f'\tlocation: {"/".join(self.loc) or "<root>"}',
            *(f'\t{key}: {value}' for key, value in info.items()),
        ))

    def __str__(self):
        return self._format(reason=self.args[0] if self.args else 'unknown')


class ParameterError(SchemeForgeError):
    '''
    error thrown for inputs outside an operation's domain
    '''

    def __init__(self, reason: str):
        super().__init__(reason)


class CapExceededError(SchemeForgeError):
    '''
    error thrown when an input is above a configured size cap
    '''

    def __init__(self, quantity: str, value: int, cap: int):
        super().__init__(quantity, value, cap)

    def __str__(self):
        quantity, value, cap = self.args
        return self._format(
            reason=f'{quantity} is above the configured cap',
            value=value,
            cap=cap,
        )


class ReducibleModulusError(SchemeForgeError):
    '''
    error thrown for a field modulus that is not an irreducible polynomial
    '''

    def __init__(self, p: int, modulus: tuple[int, ...]):
        super().__init__(p, modulus)

    def __str__(self):
        p, modulus = self.args
        return self._format(
            reason='modulus is not a monic irreducible polynomial',
            p=p,
            modulus=list(modulus),
        )


class InternalFaultError(SchemeForgeError):
    '''
    error thrown when a mathematically impossible state is reached
    '''

    def __init__(self, reason: str):
        super().__init__(reason)


class IrrationalPeriodsError(SchemeForgeError):
    '''
    error thrown when some Gaussian period is not a rational integer
    '''

    def __init__(self, e: int, trace_counts: tuple[tuple[int, ...], ...]):
        super().__init__(e, trace_counts)

    def __str__(self):
        e, trace_counts = self.args
        return self._format(
            reason='Gaussian periods are not all rational',
            e=e,
            trace_counts=_str_rows(trace_counts),
        )


class NotAnEigenmatrixError(SchemeForgeError):
    '''
    error thrown when a matrix violates the first eigenmatrix axioms
    '''

    def __init__(self, reason: str):
        super().__init__(reason)


class NotAFusionError(SchemeForgeError):
    '''
    error thrown when a partition of the relations does not give a fusion scheme
    '''

    def __init__(self, reason: str, parts: tuple[int, ...] = ()):
        super().__init__(reason, parts)

    def __str__(self):
        reason, parts = self.args
        return self._format(
            reason=f'not a fusion scheme: {reason}',
            offending_parts=list(parts),
        )


class NotStronglyRegularError(SchemeForgeError):
    '''
    error thrown when a relation has more than two nontrivial eigenvalues
    '''

    def __init__(self, relation: int, values: dict[int, int]):
        super().__init__(relation, values)

    def __str__(self):
        relation, values = self.args
        return self._format(
            reason='not strongly regular',
            relation=relation,
            values=dict(sorted(Counter(values).items())),
        )


class InfeasibleParametersError(SchemeForgeError):
    '''
    error thrown for spectra that do not give feasible SRG parameters
    '''

    def __init__(self, n: int, k: int, r: int, s: int, lam: int, mu: int):
        super().__init__(n, k, r, s, lam, mu)

    def __str__(self):
        n, k, r, s, lam, mu = self.args
        return self._format(
            reason='(n - 1 - k) * mu != k * (k - 1 - lambda)',
            spectrum=(k, r, s),
            parameters=(n, k, lam, mu),
        )


class NotAnAssociationSchemeError(SchemeForgeError):
    '''
    error thrown by the dense oracle when the axioms fail
    '''

    def __init__(self, reason: str, witness: tuple = ()):
        super().__init__(reason, witness)

    def __str__(self):
        reason, witness = self.args
        return self._format(reason=reason, witness=witness)


class NotADesignError(SchemeForgeError):
    '''
    error thrown when an incidence matrix is not a symmetric 2-design
    '''

    def __init__(self, reason: str, witness: tuple = ()):
        super().__init__(reason, witness)

    def __str__(self):
        reason, witness = self.args
        return self._format(reason=reason, witness=witness)


class FormulaMismatchError(SchemeForgeError):
    '''
    error thrown when a computed fusion differs from its closed form
    '''

    def __init__(self, name: str, expected, computed):
        super().__init__(name, expected, computed)

    def __str__(self):
        name, expected, computed = self.args
        return self._format(
            reason=f'{name} differs from its closed form',
            expected=_str_rows(expected),
            computed=_str_rows(computed),
        )


class GeometryError(SchemeForgeError):
    '''
    error thrown for invalid projective spaces, lines, spreads or alignments
    '''

    def __init__(self, reason: str):
        super().__init__(reason)
