from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator
from typing import Dict, List, Optional
from enum import Enum
import shlex

from fowl.config import Settings, settings as default_settings
from fowl.owl.annotations import FolSyntax, syntax_from_suffix
from fowl.owl.model import Iri


class SzsStatus(str, Enum):
    THEOREM = "Theorem"
    COUNTER_SATISFIABLE = "CounterSatisfiable"
    SATISFIABLE = "Satisfiable"
    UNSATISFIABLE = "Unsatisfiable"
    TIMEOUT = "Timeout"
    GAVE_UP = "GaveUp"
    ERROR = "Error"


class ProverConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    executable: str
    argument_template: List[str]
    sat_argument_template: Optional[List[str]] = None
    timeout_seconds: int = 30
    keep_problems: bool = False
    problem_dir: Optional[str] = None

    @field_validator("timeout_seconds")
    @classmethod
    def check_timeout(cls, value: int) -> int:
        if value < 1:
            raise ValueError("timeout must be at least 1 second")
        return value

    @field_validator("argument_template", "sat_argument_template")
    @classmethod
    def check_template(cls, value: Optional[List[str]]) -> Optional[List[str]]:
        if value is not None and not any("{file}" in arg for arg in value):
            raise ValueError("argument template needs a {file} placeholder")
        return value

    @classmethod
    def from_settings(cls, config: Settings = default_settings, **overrides) -> "ProverConfig":
        """Build the prover configuration from environment settings"""
        values = {
            "executable": config.FOWL_PROVER,
            "argument_template": shlex.split(config.FOWL_PROVER_ARGS),
            "sat_argument_template": shlex.split(config.FOWL_PROVER_SAT_ARGS) if config.FOWL_PROVER_SAT_ARGS else None,
            "timeout_seconds": config.FOWL_TIMEOUT,
            "keep_problems": config.FOWL_KEEP_PROBLEMS,
            "problem_dir": config.FOWL_PROBLEM_DIR,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def command(self, problem_path: str, satisfiability: bool = False) -> List[str]:
        """Expand the argument template for one problem file"""
        template = self.argument_template
        if satisfiability and self.sat_argument_template:
            template = self.sat_argument_template
        args = [
            arg.replace("{file}", problem_path).replace("{timeout}", str(self.timeout_seconds))
            for arg in template
        ]
        return [self.executable] + args


class ProverVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    status: SzsStatus
    wall_clock: float = 0.0
    raw_output: str = ""
    problem_path: Optional[str] = None

    @property
    def is_unknown(self) -> bool:
        return self.status in (SzsStatus.TIMEOUT, SzsStatus.GAVE_UP)


class ConjectureResult(BaseModel):
    unit_name: str
    source: str
    verdict: ProverVerdict

    def to_record(self) -> Dict:
        return {
            "conjecture": self.unit_name,
            "source": self.source,
            "status": self.verdict.status.value,
            "seconds": round(self.verdict.wall_clock, 3),
        }


def count_statuses(verdicts) -> Dict[str, int]:
    counts = {status.value: 0 for status in SzsStatus}
    for verdict in verdicts:
        counts[verdict.status.value] += 1
    return counts


class EntailmentReport(BaseModel):
    per_conjecture: List[ConjectureResult] = Field(default_factory=list)

    @computed_field
    @property
    def summary(self) -> Dict[str, int]:
        return count_statuses(result.verdict for result in self.per_conjecture)

    @computed_field
    @property
    def entailed(self) -> bool:
        # vacuously true without conjectures
        return all(r.verdict.status == SzsStatus.THEOREM for r in self.per_conjecture)


class MembershipResult(BaseModel):
    instance: str
    class_name: str
    verdict: ProverVerdict

    def to_record(self) -> Dict:
        return {
            "instance": self.instance,
            "class": self.class_name,
            "status": self.verdict.status.value,
            "seconds": round(self.verdict.wall_clock, 3),
        }


class MembershipOutcome(str, Enum):
    EXPECTED_PROOF = "expected proof"
    UNEXPECTED_PROOF = "unexpected proof"
    EXPECTED_COUNTER_EXAMPLE = "expected counter-example"
    UNEXPECTED_COUNTER_EXAMPLE = "unexpected counter-example"
    UNKNOWN = "unknown"


class ClassifiedMembership(BaseModel):
    result: MembershipResult
    outcome: MembershipOutcome

    def to_record(self) -> Dict:
        record = self.result.to_record()
        record["outcome"] = self.outcome.value
        return record


class NamingMode(str, Enum):
    IRI = "iri"
    READABLE = "readable"


class EmitStyle(str, Enum):
    QUOTED = "quoted"
    MANGLED = "mangled"


class CliConfig(BaseModel):
    command: str
    catalog: Optional[str] = None
    annotation_props: Dict[str, FolSyntax] = Field(default_factory=dict)
    naming: NamingMode = NamingMode.IRI
    style: EmitStyle = EmitStyle.QUOTED
    owl_only: bool = False
    strict: bool = False
    externalize: bool = False
    alignment_report: Optional[str] = None
    parallelism: int = 1
    prover: ProverConfig

    @field_validator("parallelism")
    @classmethod
    def check_parallelism(cls, value: int) -> int:
        if value < 1:
            raise ValueError("parallelism must be at least 1")
        return value

    @field_validator("annotation_props", mode="before")
    @classmethod
    def resolve_annotation_props(cls, value):
        """IRI or IRI=clif / IRI=tptp; a bare IRI must carry a /clif, #tptp, ... suffix"""
        if isinstance(value, dict):
            return value
        mapping: Dict[str, FolSyntax] = {}
        for prop in value:
            text, syntax = prop, None
            head, _, tail = prop.rpartition("=")
            if head and tail.lower() in (s.value for s in FolSyntax):
                text, syntax = head, FolSyntax(tail.lower())
            iri = text.strip().strip("<>")
            if not iri or any(ch.isspace() for ch in iri):
                raise ValueError(f"invalid annotation property IRI '{prop}'")
            syntax = syntax or syntax_from_suffix(Iri(iri))
            if syntax is None:
                raise ValueError(
                    f"Cannot tell the syntax of annotation property {prop}; write it as IRI=clif or IRI=tptp"
                )
            mapping[iri] = syntax
        return mapping

    def annotation_properties(self) -> Optional[Dict[Iri, FolSyntax]]:
        """Explicit properties as Iri keys, or None to fall back to the suffix convention"""
        return {Iri(iri): syntax for iri, syntax in self.annotation_props.items()} or None
