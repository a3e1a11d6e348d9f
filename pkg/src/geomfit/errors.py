"""Exception hierarchy.

Every error carries a machine-readable ``code`` and the CLI ``exit_code`` it
maps to (2 for bad input, 3 for degenerate geometry).
"""


class GeomFitError(Exception):
    code = "error"
    exit_code = 1

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"error": self.code, "message": str(self)}
        out.update(self.details)
        return out


class InputError(GeomFitError):
    code = "input_error"
    exit_code = 2


class ParseError(InputError):
    code = "parse_error"

    def __init__(self, message, row=None, column=None):
        super().__init__(message, row=row, column=column)
        self.row = row
        self.column = column

    def __str__(self):
        where = []
        if self.row is not None:
            where.append(f"row {self.row}")
        if self.column is not None:
            where.append(f"column {self.column}")
        msg = super().__str__()
        return f"{', '.join(where)}: {msg}" if where else msg


class EmptyInput(InputError):
    code = "empty_input"


class InvalidInput(InputError):
    code = "invalid_input"


class TooFewPoints(InputError):
    code = "too_few_points"


class InvalidOptions(InputError):
    code = "invalid_options"


class InvalidSpec(InputError):
    code = "invalid_spec"


class DegenerateError(GeomFitError):
    code = "degenerate"
    exit_code = 3


class DegenerateCloud(DegenerateError):
    """All points coincide; no plane or line is determined."""

    code = "degenerate_cloud"


class DegenerateSystem(DegenerateError):
    """A 2x2 system is singular under the rank tolerance."""

    code = "degenerate_system"


class DegenerateInput(DegenerateError):
    code = "degenerate_input"


class ConvergenceError(GeomFitError):
    code = "internal_convergence"
    exit_code = 1
