import json

from schemas import OutputFormat, VerifyScope
from services.emit_service import emit
from services.mf_service import mf_validate, tensor_blocks
from services.verify_service import run_verify
from settings import Settings


def flipped_tensor(F, G):
    A, B = tensor_blocks(F, G)
    return mf_validate(A, [[-x for x in row] for row in B], F.f + G.f)


def test_fermat_scope():
    report = run_verify(VerifyScope.FERMAT)
    assert report.passed
    assert "fermat.b_set.m3.n2" in [c.identifier for c in report.checks]


def test_chern_scope():
    report = run_verify(VerifyScope.CHERN)
    assert report.passed, [c for c in report.checks if not c.passed]
    identifiers = [c.identifier for c in report.checks]
    assert "chern.cubic_surface.q_rank" in identifiers
    assert len([i for i in identifiers if i.startswith("chern.cubic_surface.E")]) == 6


def test_milnor_and_hodge_scopes():
    assert run_verify(VerifyScope.MILNOR).passed
    assert run_verify(VerifyScope.HODGE).passed


def test_psi_scope_with_few_samples():
    report = run_verify(VerifyScope.PSI, settings=Settings(psi_samples=2))
    assert report.passed, [c for c in report.checks if not c.passed]


def test_flipped_tensor_sign_is_caught():
    report = run_verify(VerifyScope.CHERN, tensor=flipped_tensor)
    assert not report.passed
    failed = [c.identifier for c in report.failures()]
    assert any(i.startswith("chern.multiplicativity") for i in failed)


def test_parallel_run_keeps_order():
    serial = run_verify(VerifyScope.FERMAT)
    parallel = run_verify(VerifyScope.FERMAT, settings=Settings(verify_workers=4))
    assert [c.identifier for c in parallel.checks] == [c.identifier for c in serial.checks]
    assert parallel.passed


def test_emit_json_is_canonical():
    data = {"count": 0, "classes": []}
    assert emit(data) == '{"classes":[],"count":0}\n'
    report = run_verify(VerifyScope.FERMAT)
    assert json.loads(emit(report))["passed"] is True


def test_emit_table():
    text = emit({"e": 3, "hilbert": [1, 4, 6, 4, 1]}, OutputFormat.TABLE)
    assert "hilbert: 1 4 6 4 1" in text.splitlines()


def test_max_degree_reaches_milnor_engine():
    report = run_verify(VerifyScope.MILNOR, settings=Settings(max_degree=3))
    assert not report.passed
    assert all(c.actual.startswith("ResourceBoundError") for c in report.failures())
