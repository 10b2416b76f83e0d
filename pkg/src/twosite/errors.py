"""Exception hierarchy shared by every module."""


class TwoSiteError(Exception):
    pass


class MalformedTable(TwoSiteError):
    pass


class NotAOneCell(TwoSiteError):
    pass


class NotAnObject(TwoSiteError):
    pass


class BoundaryMismatch(TwoSiteError):
    pass


class CodomainMismatch(TwoSiteError):
    pass


class AxiomViolation(TwoSiteError):
    pass


class NotAGroupoid(TwoSiteError):
    pass


class OracleDisagreement(TwoSiteError):
    """An oracle and the defining search returned different verdicts."""


class InstanceFormatError(TwoSiteError):
    pass
