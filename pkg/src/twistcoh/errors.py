"""Exception hierarchy.  Every error carries a stable machine-readable code."""


class TwistcohError(Exception):
    code = "ERROR"

    def __init__(self, message, **payload):
        super().__init__(message)
        self.message = message
        self.payload = payload


class NonSmooth(TwistcohError):
    """f is not squarefree; payload carries the gcd(f, f') witness."""
    code = "NON_SMOOTH"


class NotAUnit(TwistcohError):
    code = "NOT_A_UNIT"


class NotClosed(TwistcohError):
    """Rejected twisting parameter; payload carries d(omega) as witness."""
    code = "NOT_CLOSED"


class NotStabilized(TwistcohError):
    """Dimensions did not stabilize inside the window; payload carries the trail."""
    code = "NOT_STABILIZED"


class IncompatibleRing(TwistcohError):
    code = "INCOMPATIBLE_RING"


class DegenerationViolated(TwistcohError):
    code = "DEGENERATION_VIOLATED"


class ShapeMismatch(TwistcohError):
    code = "SHAPE_MISMATCH"


class ParseError(TwistcohError):
    """Syntax error in an input document; knows where and what was expected."""
    code = "PARSE_ERROR"

    def __init__(self, message, line, column, expected=()):
        super().__init__(message, line=line, column=column,
                         expected=sorted(expected))
        self.line = line
        self.column = column
        self.expected = sorted(expected)

    def __str__(self):
        loc = "line %d, column %d: %s" % (self.line, self.column, self.message)
        if self.expected:
            loc += " (expected %s)" % ", ".join(self.expected)
        return loc


class ValidationError(TwistcohError):
    code = "VALIDATION_ERROR"
