"""Exception hierarchy. Every error raised on bad input derives from LocaleLabError."""


class LocaleLabError(ValueError):
    """Base class for all input/precondition errors raised by locale_lab."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class DuplicateLabel(LocaleLabError):
    pass


class UnknownElement(LocaleLabError):
    pass


class CycleDetected(LocaleLabError):
    pass


class MissingMeet(LocaleLabError):
    pass


class MissingJoin(LocaleLabError):
    pass


class NotAPoset(LocaleLabError):
    pass


class FrameViolation(LocaleLabError):
    """The lattice is not distributive (witness is a triple a, b, c) or its
    Heyting table is inconsistent."""


class NotATopology(LocaleLabError):
    pass


class FrameTooLarge(LocaleLabError):
    pass


class MixedFrames(LocaleLabError):
    pass


class MixedPosets(LocaleLabError):
    pass


class NotMeetPreserving(LocaleLabError):
    pass


class NotLocalic(LocaleLabError):
    pass


class NotMeetSubset(LocaleLabError):
    pass


class PreconditionViolated(LocaleLabError):
    pass


class CapExceeded(LocaleLabError):
    pass


class UnknownTheorem(LocaleLabError):
    pass


class BadPredicate(LocaleLabError):
    pass


class InternalInconsistency(AssertionError):
    """Two independent routes to the same quantity disagreed.

    Raised only when tables are corrupt or a theorem fails; carries a witness.
    """

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness
