from typing import List, Tuple


class RppError(Exception):
    pass


class ConfigurationError(RppError):
    pass


class StrandError(RppError, ValueError):
    def __init__(self, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"invalid nucleotide {text[position]!r} at position {position} in {text!r}")


class CapacityExceededError(RppError):
    def __init__(self, tube: str, distinct: int, cap: int):
        self.tube = tube
        self.distinct = distinct
        self.cap = cap
        # set by the script executor: the statement that overflowed
        self.line = 0
        self.column = 0
        super().__init__(f"tube {tube} would hold {distinct} distinct strands, cap is {cap}")

    def format(self, filename: str = "<script>") -> str:
        if not self.line:
            return f"error: {self}"
        return f"{filename}:{self.line}:{self.column}: capacity: {self}"


class CodebookGenerationError(RppError):
    pass


class OracleGuardError(RppError):
    pass


# Instance validation

class InstanceValidationError(RppError, ValueError):
    pass


class SelfLoopError(InstanceValidationError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"edge ({vertex},{vertex}) is a self-loop")


class DuplicateEdgeError(InstanceValidationError):
    def __init__(self, edge: Tuple[int, int]):
        self.edge = edge
        super().__init__(f"edge ({edge[0]},{edge[1]}) appears more than once")


class RequiredEdgeMissingError(InstanceValidationError):
    def __init__(self, edge: Tuple[int, int]):
        self.edge = edge
        super().__init__(f"required edge ({edge[0]},{edge[1]}) is not an edge of the graph")


class DisconnectedGraphError(InstanceValidationError):
    def __init__(self, unreachable: List[int]):
        self.unreachable = unreachable
        super().__init__(f"graph is disconnected: vertices {unreachable} unreachable from vertex 1")


class VertexRangeError(InstanceValidationError):
    pass


class NegativeValueError(InstanceValidationError):
    pass


# Tube scripts

class ScriptError(RppError):
    def __init__(self, category: str, message: str, line: int = 0, column: int = 0):
        self.category = category
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {category}: {message}")

    def format(self, filename: str = "<script>") -> str:
        return f"{filename}:{self.line}:{self.column}: {self.category}: {self.message}"


class ScriptParseError(RppError):
    def __init__(self, diagnostics: List[ScriptError], filename: str = "<script>"):
        self.diagnostics = diagnostics
        self.filename = filename
        super().__init__("\n".join(d.format(filename) for d in diagnostics))
