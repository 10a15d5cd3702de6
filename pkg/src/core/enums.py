from enum import StrEnum, auto


class UpperStrEnum(StrEnum):
    @staticmethod
    def _generate_next_value_(name: str, start: int, count: int, last_values: list) -> str:
        return name


class TransformKind(StrEnum):
    DECIMATED = auto()
    UNDECIMATED = auto()


class FusionRule(StrEnum):
    MAX_RULE = auto()
    GA_WEIGHTED = auto()


class BandKind(UpperStrEnum):
    LL = auto()
    LH = auto()
    HL = auto()
    HH = auto()


class TerminationReason(StrEnum):
    EPSILON = auto()
    MAX_GENERATIONS = auto()


class ReportFormat(StrEnum):
    JSON = auto()
    CSV = auto()


class DominantSource(StrEnum):
    SOURCE1 = auto()
    SOURCE2 = auto()
    BALANCED = auto()


class MetricName(StrEnum):
    IE = auto()
    MI = auto()
    RMSE = auto()
    PSNR = auto()
    QI = auto()
    SF = auto()


class FusionMethod(StrEnum):
    DWT = "dwt"
    UDWT = "udwt"
    DWT_GA = "dwt-ga"
    UDWT_GA = "udwt-ga"

    @property
    def transform(self) -> TransformKind:
        match self:
            case FusionMethod.DWT | FusionMethod.DWT_GA:
                return TransformKind.DECIMATED
            case FusionMethod.UDWT | FusionMethod.UDWT_GA:
                return TransformKind.UNDECIMATED

    @property
    def rule(self) -> FusionRule:
        match self:
            case FusionMethod.DWT | FusionMethod.UDWT:
                return FusionRule.MAX_RULE
            case FusionMethod.DWT_GA | FusionMethod.UDWT_GA:
                return FusionRule.GA_WEIGHTED

    @property
    def label(self) -> str:
        return f"A{list(FusionMethod).index(self) + 1}"

    @property
    def title(self) -> str:
        return f"{self.upper()}_IF"
