import os

import pytest
from pydantic import ValidationError

from fowl.logic.ast import Constant, Not, Predicate, Role, TptpProblem, TptpUnit
from fowl.logic.tptp import HEADER, parse_tptp_file
from fowl.schemas import ProverConfig, ProverVerdict, SzsStatus
from fowl.services.prover import parse_szs_status, run_prover
from tests.conftest import read_fixture

FACT = TptpProblem((TptpUnit("fact", Role.AXIOM, Predicate("p", (Constant("a"),))),))


@pytest.mark.parametrize("output,expected", [
    ("% SZS status Theorem for problem.p", (SzsStatus.THEOREM, "Theorem")),
    ("noise\n% SZS status CounterSatisfiable for x\n", (SzsStatus.COUNTER_SATISFIABLE, "CounterSatisfiable")),
    ("SZS status Satisfiable", (SzsStatus.SATISFIABLE, "Satisfiable")),
    ("% SZS status Unsatisfiable for x", (SzsStatus.UNSATISFIABLE, "Unsatisfiable")),
    ("% SZS status Timeout for x", (SzsStatus.TIMEOUT, "Timeout")),
    ("% SZS status GaveUp for x", (SzsStatus.GAVE_UP, "GaveUp")),
    ("% SZS status ContradictoryAxioms for x", (SzsStatus.THEOREM, "ContradictoryAxioms")),
    ("% SZS status ResourceOut for x", (SzsStatus.GAVE_UP, "ResourceOut")),
    ("% SZS status Unknown for x", (SzsStatus.GAVE_UP, "Unknown")),
    ("% SZS status Bewildered for x", (SzsStatus.ERROR, "Bewildered")),
    ("Refutation found. Thanks to Tanya!", (SzsStatus.ERROR, None)),
    ("", (SzsStatus.ERROR, None)),
])
def test_parse_szs_status(output, expected):
    """Test SZS lines map onto the reported statuses"""
    assert parse_szs_status(output) == expected


def test_first_status_line_wins():
    """Test only the first SZS status line counts"""
    output = "% SZS status Theorem for a\n% SZS status CounterSatisfiable for b\n"
    assert parse_szs_status(output)[0] == SzsStatus.THEOREM


def test_command_templates():
    """Test placeholders expand and the satisfiability template is used on request"""
    config = ProverConfig(
        executable="vampire",
        argument_template=["--mode", "casc", "-t", "{timeout}", "{file}"],
        sat_argument_template=["--mode", "casc_sat", "-t", "{timeout}", "{file}"],
        timeout_seconds=7,
    )
    assert config.command("/tmp/p.p") == ["vampire", "--mode", "casc", "-t", "7", "/tmp/p.p"]
    assert config.command("/tmp/p.p", satisfiability=True)[2] == "casc_sat"

    plain = ProverConfig(executable="eprover", argument_template=["--auto", "{file}"])
    assert plain.command("/tmp/p.p", satisfiability=True) == ["eprover", "--auto", "/tmp/p.p"]


def test_config_validation():
    """Test timeouts below one second and templates without a file are rejected"""
    with pytest.raises(ValidationError):
        ProverConfig(executable="vampire", argument_template=["{file}"], timeout_seconds=0)
    with pytest.raises(ValidationError):
        ProverConfig(executable="vampire", argument_template=["--mode", "casc"])


def test_config_from_settings():
    """Test settings fill the config and None overrides are ignored"""
    config = ProverConfig.from_settings(timeout_seconds=None, executable="eprover")
    assert config.executable == "eprover"
    assert config.timeout_seconds >= 1
    assert any("{file}" in arg for arg in config.argument_template)


def test_verdict_is_unknown():
    """Test timeouts and give-ups count as unknown"""
    assert ProverVerdict(status=SzsStatus.TIMEOUT).is_unknown
    assert ProverVerdict(status=SzsStatus.GAVE_UP).is_unknown
    assert not ProverVerdict(status=SzsStatus.ERROR).is_unknown


def test_fake_prover_reads_the_problem(fake_prover):
    """Test the problem file reaches the prover and its status is parsed"""
    config = fake_prover('grep -q "fof(fact, axiom, p(a))" "$1" && echo "% SZS status Theorem for $1"')
    verdict = run_prover(FACT, config)
    assert verdict.status == SzsStatus.THEOREM
    assert verdict.problem_path is None
    assert verdict.wall_clock >= 0


def test_counter_satisfiable(szs_prover):
    """Test a CounterSatisfiable answer"""
    assert run_prover(FACT, szs_prover("CounterSatisfiable")).status == SzsStatus.COUNTER_SATISFIABLE


def test_no_status_is_an_error(fake_prover):
    """Test output without an SZS line is an Error verdict"""
    verdict = run_prover(FACT, fake_prover('echo "segmentation fault"; exit 139'))
    assert verdict.status == SzsStatus.ERROR
    assert "segmentation fault" in verdict.raw_output


def test_missing_executable():
    """Test a prover that cannot be started"""
    config = ProverConfig(executable="/nonexistent/fowl-prover", argument_template=["{file}"])
    verdict = run_prover(FACT, config)
    assert verdict.status == SzsStatus.ERROR
    assert "not found" in verdict.raw_output


def test_timeout_kills_the_prover(fake_prover):
    """Test a prover that outlives its budget is killed"""
    verdict = run_prover(FACT, fake_prover("exec sleep 10", timeout=1))
    assert verdict.status == SzsStatus.TIMEOUT
    assert verdict.raw_output == "Killed after 1s"
    assert verdict.wall_clock < 10


def test_keep_problems(szs_prover, tmp_path):
    """Test kept problem files stay on disk with the emitted problem"""
    config = szs_prover("Theorem", keep_problems=True, problem_dir=str(tmp_path / "problems"))
    verdict = run_prover(FACT, config)
    assert verdict.problem_path is not None
    assert os.path.dirname(verdict.problem_path) == str(tmp_path / "problems")
    with open(verdict.problem_path, encoding="utf-8") as f:
        text = f.read()
    assert text.startswith(HEADER)
    assert "fof(fact, axiom, p(a))." in text


def test_problem_files_are_removed(szs_prover, tmp_path):
    """Test problem files are deleted after the run by default"""
    config = szs_prover("Theorem", problem_dir=str(tmp_path))
    run_prover(FACT, config)
    assert [p for p in os.listdir(tmp_path) if p.endswith(".p")] == []


def test_unwritable_problem_dir(szs_prover, tmp_path):
    """Test a problem directory that cannot be created gives an Error verdict"""
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory", encoding="utf-8")
    verdict = run_prover(FACT, szs_prover("Theorem", problem_dir=str(blocker / "problems")))
    assert verdict.status == SzsStatus.ERROR
    assert verdict.raw_output.startswith("Could not write problem file")
    assert verdict.problem_path is None


# Real prover

def _problem(*names):
    problem = TptpProblem()
    for name in names:
        problem = problem + parse_tptp_file(read_fixture("tptp", name))
    return problem


@pytest.mark.prover
def test_real_prover_theorem(real_prover):
    """Test p(a) entails p(a)"""
    assert run_prover(_problem("p_of_a.p", "prove_p.p"), real_prover).status == SzsStatus.THEOREM


@pytest.mark.prover
def test_real_prover_counter_satisfiable(real_prover):
    """Test p(a) does not entail q(a)"""
    assert run_prover(_problem("p_of_a.p", "prove_q.p"), real_prover).status == SzsStatus.COUNTER_SATISFIABLE


@pytest.mark.prover
def test_real_prover_contradiction_without_conjecture(real_prover):
    """Test contradictory axioms are reported unsatisfiable in satisfiability mode"""
    contradiction = FACT.extend([TptpUnit("no_fact", Role.AXIOM, Not(Predicate("p", (Constant("a"),))))])
    assert run_prover(contradiction, real_prover, satisfiability=True).status == SzsStatus.UNSATISFIABLE
