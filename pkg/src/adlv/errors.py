"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class AdlvError(Exception):
    code = "error"


class InvalidSpec(AdlvError):
    code = "invalid_spec"


class InvalidDelta(AdlvError):
    code = "invalid_delta"


class InvalidLattice(AdlvError):
    code = "invalid_lattice"


class ActionNotCompatible(AdlvError):
    code = "action_not_compatible"


class DatumMismatch(AdlvError):
    code = "datum_mismatch"


class OnHyperplane(AdlvError):
    code = "on_hyperplane"


class NotInLevi(AdlvError):
    code = "not_in_levi"


class JNotDeltaStable(AdlvError):
    code = "J_not_delta_stable"


class NotBasic(AdlvError):
    code = "not_basic"


class NotDeltaConnected(AdlvError):
    code = "not_delta_connected"


class NotShrunken(AdlvError):
    code = "not_shrunken"


class NotLengthZero(AdlvError):
    code = "not_length_zero"


class NotSimpleReflection(AdlvError):
    code = "not_simple_reflection"


class ParseError(AdlvError):
    code = "parse_error"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownGenerator(ParseError):
    code = "unknown_generator"


class RankNotTwo(AdlvError):
    code = "rank_not_two"
