"""Exception types shared across the package."""


class DataFormatError(ValueError):
    """Raised when an input file or record cannot be parsed or validated."""


class ContractViolation(ValueError):
    """Raised when a query parameter falls outside an index's admissible range."""


class FingerprintMismatch(ContractViolation):
    """Raised when an index does not belong to the dataset it is queried against."""
