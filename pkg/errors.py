#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Exception hierarchy.

InputError subclasses describe bad or unsupported input (CLI exit 1).
VerificationError subclasses mean an identity that must hold did not hold;
they are always bugs (CLI exit 2). Each carries the identity name.
"""


class CharPError(Exception):
    """Base class for every error raised by the toolkit"""
    exit_code = 1
    identity = None

    def __init__(self, message="", identity=None):
        super().__init__(message)
        if identity is not None:
            self.identity = identity

    def to_dict(self):
        return {
            "error": type(self).__name__,
            "identity": self.identity,
            "message": str(self),
        }


class InputError(CharPError):
    exit_code = 1


class VerificationError(CharPError):
    exit_code = 2


# basefield
class NotPrime(InputError):
    pass


class TooLarge(InputError):
    pass


class BadDegree(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


# polyring
class RingMismatch(InputError):
    pass


class NotInImage(InputError):
    pass


class NotClosed(InputError):
    pass


class NoSolution(InputError):
    pass


# weyl
class TwistMismatch(InputError):
    pass


class BadIndex(InputError):
    pass


class HypothesisViolated(InputError):
    pass


# connection / higgs
class NotFlat(InputError):
    pass


class NotHiggs(InputError):
    pass


class NotConstantCoefficients(InputError):
    pass


class NotMultiplicityFree(InputError):
    pass


# azcorr
class NoLift(InputError):
    pass


class KernelRankMismatch(InputError):
    pass


# cli
class SchemaError(InputError):
    pass


class RelationFailure(VerificationError):
    identity = "weyl-relations"


class LinearityFailure(VerificationError):
    identity = "p-curvature-linearity"


class DescentFailure(VerificationError):
    identity = "char-descent"


class VerificationFailure(VerificationError):
    pass


class IdentityFailure(VerificationError):
    pass
