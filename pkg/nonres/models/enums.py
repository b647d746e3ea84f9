from enum import Enum as PyEnum


class ZeroMethod(str, PyEnum):
    CRITICAL_LINE_SCAN = "critical_line_scan"
    RECTANGLE_REFINEMENT = "rectangle_refinement"


class AuditMode(str, PyEnum):
    THEOREM_1_2 = "theorem_1_2"
    THEOREM_1_3 = "theorem_1_3"
    THEOREM_1_3_CENTERED = "theorem_1_3_centered"


class HypothesisStatus(str, PyEnum):
    VERIFIED_TO_HEIGHT = "verified_to_height"
    VIOLATED = "violated"
    INDETERMINATE = "indeterminate"


class FormulaVariant(str, PyEnum):
    THEOREM1 = "theorem1"  # (x - n)-weighted identity
    THEOREM2 = "theorem2"  # kernel-weighted identity


class InverseSquareMode(str, PyEnum):
    ANNULUS_R_TO_1 = "annulus_R_to_1"
    BEYOND_K = "beyond_K"
    BEYOND_R = "beyond_R"


class CharacterSelector(str, PyEnum):
    ALL = "all"
    QUADRATIC = "quadratic"
    PRIMITIVE = "primitive"


class OutputFormat(str, PyEnum):
    JSON = "json"
    CSV = "csv"


class Command(str, PyEnum):
    CHARS = "chars"
    NONRES = "nonres"
    ZEROS = "zeros"
    KERNEL_CHECK = "kernel-check"
    EXPLICIT = "explicit"
    DENSITY = "density"
    AUDIT = "audit"
    MAIN_TERM = "main-term"
    SCHEMA = "schema"
