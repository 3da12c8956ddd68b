"""Domain errors raised by the logmodapp library.

Every error carries a stable ``code`` which the command line reports verbatim.
"""


class LogModError(Exception):
    """Base class for all domain errors"""
    code = 'LogModError'

    def __init__(self, message=''):
        super().__init__(message or self.code)
        self.message = message or self.code

    def as_document(self):
        return {'error': self.code, 'message': self.message}


class DimensionMismatch(LogModError):
    code = 'DimensionMismatch'


class NotPointed(LogModError):
    code = 'NotPointed'


class NotAFace(LogModError):
    code = 'NotAFace'


class NotSaturated(LogModError):
    code = 'NotSaturated'


class SubgroupNotContained(LogModError):
    code = 'SubgroupNotContained'


class IllFormedHom(LogModError):
    code = 'IllFormedHom'


class GeneratorOutsideMonoid(LogModError):
    code = 'GeneratorOutsideMonoid'


class BaseMismatch(LogModError):
    code = 'BaseMismatch'


class EmptyIdeal(LogModError):
    code = 'EmptyIdeal'


class NotAnExtension(LogModError):
    code = 'NotAnExtension'


class GroupMismatch(LogModError):
    code = 'GroupMismatch'


class InvalidSubcone(LogModError):
    code = 'InvalidSubcone'


class InvalidValuation(LogModError):
    code = 'InvalidValuation'


class EmptyStratification(LogModError):
    code = 'EmptyStratification'


class NotSharp(LogModError):
    code = 'NotSharp'


class NotRefining(LogModError):
    code = 'NotRefining'


class NotAFan(LogModError):
    code = 'NotAFan'


class OracleMismatch(LogModError):
    code = 'OracleMismatch'


class UnknownCommand(LogModError):
    code = 'UnknownCommand'
