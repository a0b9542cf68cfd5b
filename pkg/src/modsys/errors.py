"""Exception hierarchy shared by every part of the package."""


class ModsysError(Exception):
    """Base class for all errors raised by modsys."""


class EnumerationTooLarge(ModsysError):
    """An enumeration would exceed the configured atom ceiling."""

    def __init__(self, atoms: int, ceiling: int, what: str = "enumeration"):
        self.atoms = atoms
        self.ceiling = ceiling
        super().__init__(
            f"{what} too large: {atoms} atoms exceeds the ceiling of {ceiling} "
            "(set MODSYS_ATOM_CEILING to raise it)"
        )


class VocabularyMismatch(ModsysError):
    pass


class PreconditionError(ModsysError):
    pass


class UnsupportedConstruct(ModsysError):
    pass


class SymbolLeakage(ModsysError):
    """A module body mentions a symbol outside its declared vocabularies."""


class IllFormedSystem(ModsysError):
    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class ParseError(ModsysError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        self.bare_message = message
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}{message}")


class CompileError(ModsysError):
    pass
