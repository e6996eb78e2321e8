"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: schema problems exit 2,
unphysical states exit 3, output I/O failures exit 4.
"""


class AngularMomentumError(ValueError):
    """Invalid quantum numbers: bad parity, |m| > j, or out-of-range rank."""


class HermiticityError(ValueError):
    """Tensor parameters violate the conjugation pairing t*(k,q) = (-1)^q t(k,-q)."""


class SchemaError(ValueError):
    """A state file does not match the JSON state schema."""


class UnphysicalStateError(ValueError):
    """A density matrix failed the positive semi-definiteness gate."""

    def __init__(self, message, eigenvalues=None):
        super().__init__(message)
        self.eigenvalues = eigenvalues


class LakinFrameUndefined(ValueError):
    """Vector polarization vanishes, so no distinguished frame exists."""


class NoAlignment(ValueError):
    """All rank-2 tensor parameters vanish; principal axes are undefined."""
