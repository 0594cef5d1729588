import io
import os

import pytest

from latc.cli import main


def run_cli(args):
    out = io.StringIO()
    code = main(args, out=out)
    return code, out.getvalue()


@pytest.fixture()
def d4_file(tmp_path):
    path = tmp_path / "d4.lat"
    code, _ = run_cli(["gen", "--family", "Dn", "--n", "4", "-o", str(path)])
    assert code == 0
    return str(path)


@pytest.fixture()
def z2_file(tmp_path):
    path = tmp_path / "z2.lat"
    assert run_cli(["gen", "--family", "Zn", "--n", "2", "-o", str(path)])[0] == 0
    return str(path)


def test_gen_stdout_golden():
    code, text = run_cli(["gen", "--family", "Zn", "--n", "2"])
    assert code == 0
    assert text == "latgram 1 n=2\n1/1 0/1\n0/1 1/1\nambient d=2\n1/1 0/1\n0/1 1/1\n"


def test_relvec_z2_golden(z2_file):
    code, text = run_cli(["relvec", z2_file])
    assert code == 0
    assert text == (
        "F 0 1 norm2=1/1\n"
        "F 0 -1 norm2=1/1\n"
        "F 1 0 norm2=1/1\n"
        "F -1 0 norm2=1/1\n"
        "C 1 -1 norm2=2/1\n"
        "C -1 1 norm2=2/1\n"
        "C 1 1 norm2=2/1\n"
        "C -1 -1 norm2=2/1\n"
        "|F|=4 |C|=8\n"
    )


def test_relvec_d4_counts(d4_file):
    code, text = run_cli(["relvec", d4_file])
    assert code == 0
    assert text.strip().splitlines()[-1] == "|F|=24 |C|=48"


def test_relvec_byte_stable(d4_file):
    _, first = run_cli(["relvec", d4_file])
    _, second = run_cli(["relvec", d4_file])
    assert first == second


def test_relvec_jobs_deterministic(d4_file):
    _, serial = run_cli(["relvec", d4_file])
    _, parallel = run_cli(["relvec", d4_file, "--jobs", "2"])
    assert serial == parallel


def test_compactness_chi_d4(d4_file):
    code, text = run_cli(["compactness", d4_file, "--kind", "weak", "--max-c", "4"])
    assert code == 0
    assert text == "chi=2\n"


def test_compactness_certificate_roundtrip(d4_file, tmp_path):
    cert = tmp_path / "d4.crt"
    code, text = run_cli(["compactness", d4_file, "-o", str(cert)])
    assert code == 0
    assert text == "c=1\n"
    code, text = run_cli(["certify", d4_file, "--cert", str(cert)])
    assert code == 0
    assert text == "width=1 kind=strict ok\n"


def test_compactness_lower_bound_output(tmp_path):
    lam = tmp_path / "l5.lat"
    run_cli(["gen", "--family", "LambdaNA", "--n", "5", "--a", "3", "-o", str(lam)])
    code, text = run_cli(["compactness", str(lam), "--max-c", "1"])
    assert code == 0
    assert text == "c>1\n"


def test_certify_basis_matrix(z2_file, tmp_path):
    basis = tmp_path / "u.mat"
    basis.write_text("1 0\n0 1\n")
    code, text = run_cli(["certify", z2_file, "--basis", str(basis)])
    assert code == 0
    assert text == "width=1 kind=strict\n"


def test_relaxed_lambda_check(tmp_path):
    lam = tmp_path / "l5.lat"
    run_cli(["gen", "--family", "LambdaNA", "--n", "5", "--a", "3", "-o", str(lam)])
    code, text = run_cli(["relaxed", str(lam), "--check-lambda-na", "5", "3"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("cbar=2 lambda_n=")
    assert lines[-1] == "lambda-check n=5 a=3 width=2 ok"


def test_n2basis_output(z2_file):
    code, text = run_cli(["n2basis", z2_file])
    assert code == 0
    assert text.splitlines()[-1] == "width=1 bound=4"


def test_gens_roundtrip(z2_file, tmp_path):
    cert = tmp_path / "z2.crt"
    run_cli(["compactness", z2_file, "-o", str(cert)])
    code, text = run_cli(["gens", z2_file, "--cert", str(cert)])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "gens n=2 c=1 M=0 size=2"
    assert sum(1 for ln in lines if ln.startswith("witness ")) == 4


def test_superbasis_accept_reject(z2_file, tmp_path):
    good = tmp_path / "good.mat"
    good.write_text("1 0\n0 1\n-1 -1\n")
    code, text = run_cli(["superbasis", z2_file, "--vectors", str(good)])
    assert code == 0
    assert text.splitlines()[0] == "accept width=1"
    bad = tmp_path / "bad.mat"
    bad.write_text("1 0\n0 1\n-1 0\n")
    code, text = run_cli(["superbasis", z2_file, "--vectors", str(bad)])
    assert code == 0
    assert text == "reject reason=sum\n"


def test_cvp_against_oracle(d4_file, tmp_path):
    cert = tmp_path / "d4.crt"
    run_cli(["compactness", d4_file, "-o", str(cert)])
    code, text = run_cli(
        ["cvp", d4_file, "--cert", str(cert), "-t", "1/3,1/3,1/3,1/3", "--check"]
    )
    assert code == 0
    assert "dist2=4/9" in text
    code, text = run_cli(["oracle", d4_file, "-t", "1/3,1/3,1/3,1/3"])
    assert code == 0
    assert "dist2=4/9" in text


def test_bench_table(tmp_path):
    code, text = run_cli(
        ["bench", "--family", "LambdaNA", "--n", "4", "--a", "2", "--targets", "4"]
    )
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("bench family=LambdaNA n=4 a=2 targets=4 seed=0")
    assert lines[1].split() == [
        "idx", "dist2", "k", "it_mat", "it_str",
        "scan_mat", "scan_str", "peak_mat", "peak_str",
    ]
    assert lines[-1].startswith("summary peak_mat=")
    assert lines[-1].endswith("agree=4/4")


def test_bench_jobs_deterministic():
    args = ["bench", "--family", "Zn", "--n", "3", "--targets", "6"]
    _, serial = run_cli(args)
    _, parallel = run_cli(args + ["--jobs", "2"])
    assert serial == parallel


def test_bench_seed_changes_targets():
    base = ["bench", "--family", "Zn", "--n", "2", "--targets", "3"]
    _, a = run_cli(base)
    _, b = run_cli(base + ["--seed", "1"])
    assert a != b


def test_exit_usage():
    code, _ = run_cli(["nonsense"])
    assert code == 1
    code, _ = run_cli(["relvec"])
    assert code == 1


def test_exit_malformed(tmp_path):
    bad = tmp_path / "bad.lat"
    bad.write_text("garbage\n")
    code, _ = run_cli(["relvec", str(bad)])
    assert code == 2
    missing = tmp_path / "missing.lat"
    code, _ = run_cli(["relvec", str(missing)])
    assert code == 2


def test_exit_resource_limit(tmp_path, monkeypatch):
    lam = tmp_path / "l5.lat"
    run_cli(["gen", "--family", "LambdaNA", "--n", "5", "--a", "3", "-o", str(lam)])
    code, _ = run_cli(["relvec", str(lam), "--cap", "5"])
    assert code == 3
    monkeypatch.setenv("LATC_CANDIDATE_CAP", "5")
    code, _ = run_cli(["relvec", str(lam)])
    assert code == 3


def test_exit_unsound_certificate(tmp_path):
    lam = tmp_path / "l5.lat"
    run_cli(["gen", "--family", "LambdaNA", "--n", "5", "--a", "3", "-o", str(lam)])
    bogus = tmp_path / "bogus.crt"
    bogus.write_text(
        "latcert 1 n=5 kind=strict width=1\n"
        "transform\n"
        "1 0 0 0 0\n0 1 0 0 0\n0 0 1 0 0\n0 0 0 1 0\n0 0 0 0 1\n"
        "witnesses 0\n"
    )
    code, _ = run_cli(
        ["cvp", str(lam), "--cert", str(bogus), "-t", "0,3/4,3/2,-3/2,0", "--check"]
    )
    assert code == 4
    # certify also rejects it
    code, _ = run_cli(["certify", str(lam), "--cert", str(bogus)])
    assert code == 4
