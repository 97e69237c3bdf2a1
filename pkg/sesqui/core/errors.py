"""
Hiérarchie d'exceptions du projet.

Chaque exception porte un code machine (utilisé par la CLI et l'API) et le
code de sortie correspondant : 2 pour un échec d'attaque, 3 pour une instance
ou une entrée mal formée, 4 pour un budget dépassé.
"""
import re


def _screaming(name: str) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).upper()


class SesquiError(Exception):
    exit_code = 1

    def __init__(self, message: str = "", **context):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.context = context

    @property
    def code(self) -> str:
        return _screaming(self.__class__.__name__)


class MalformedInstanceError(SesquiError):
    exit_code = 3


class BudgetExceededError(SesquiError):
    exit_code = 4


class AttackFailure(SesquiError):
    exit_code = 2


# Corps finis
class CompositeModulus(MalformedInstanceError): pass
class ReducibleModulus(MalformedInstanceError): pass
class MixedFields(MalformedInstanceError): pass
class ZeroElement(MalformedInstanceError): pass
class DivisionByZero(MalformedInstanceError): pass
class NonSquare(MalformedInstanceError): pass

# Courbes et isogénies
class MixedCurves(MalformedInstanceError): pass
class NotOnCurve(MalformedInstanceError): pass
class SingularCurve(MalformedInstanceError): pass
class BadKernelOrder(MalformedInstanceError): pass
class TorsionNotRational(MalformedInstanceError): pass
class RootsOfUnityMissing(MalformedInstanceError): pass
class NotIsomorphic(MalformedInstanceError): pass

# Ordres quadratiques et orientations
class ZeroCoordinate(MalformedInstanceError): pass
class NotImaginaryQuadratic(MalformedInstanceError): pass
class MinPolyMismatch(MalformedInstanceError): pass
class DenominatorNotInvertible(MalformedInstanceError): pass
class UnknownEndomorphism(MalformedInstanceError): pass
class PointNotInTorsion(MalformedInstanceError): pass
class WrongOrder(MalformedInstanceError): pass
class NotSplit(MalformedInstanceError): pass
class NoSuchSubgroup(MalformedInstanceError): pass
class EmpiricalContradiction(MalformedInstanceError): pass

# Appariements et logarithmes
class NonPrincipalDivisor(MalformedInstanceError): pass
class ConjugateNotInvertible(MalformedInstanceError): pass
class NotInSubgroup(MalformedInstanceError): pass
class NoSolution(MalformedInstanceError): pass
class DegenerateBase(MalformedInstanceError): pass

# Attaques
class DegenerateSelfPairing(MalformedInstanceError): pass
class NotRamified(MalformedInstanceError): pass
class RamifiedPrime(MalformedInstanceError): pass
class NotAntiCommuting(MalformedInstanceError): pass
class NoGeneratorAmongPQ(MalformedInstanceError): pass
class NoSplitPrimeKernel(MalformedInstanceError): pass
class CoefficientNotInvertible(MalformedInstanceError): pass
class NoModuleGenerator(MalformedInstanceError): pass
class TotientTooSmall(MalformedInstanceError): pass
class UnknownFamily(MalformedInstanceError): pass

# Budgets
class BudgetExceeded(BudgetExceededError): pass
class NotSmooth(BudgetExceededError): pass
class DivisorSupportCollision(BudgetExceededError): pass

# Échecs d'attaque
class OracleExhausted(AttackFailure): pass
class Reject(AttackFailure): pass
class AmbiguousMatch(AttackFailure): pass
class MajorityInconclusive(AttackFailure): pass
class InternalInconsistency(AttackFailure): pass
