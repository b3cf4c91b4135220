import os
import subprocess
import sys

import pytest

from hyperops.cli import main
from hyperops.complexes import Hypergraph
from hyperops.io import (
    FileFormatError,
    atomic_write,
    format_faces,
    read_complex,
    read_hypergraph,
    read_probability,
    write_complex,
    write_hypergraph,
    write_probability,
    write_samples,
    write_stats_csv,
)
from hyperops.models import ProbabilityAssignment

TRIANGLE = "1\n2\n3\n1 2\n1 3\n2 3\n1 2 3\n"


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_complex_round_trip(tmp_path):
    src = write(tmp_path / "t.cx", TRIANGLE)
    amb = read_complex(src)
    assert amb.num_faces == 7
    out = str(tmp_path / "copy.cx")
    write_complex(out, amb)
    assert open(out, encoding="utf-8").read() == TRIANGLE


def test_complex_file_closes_downward(tmp_path):
    src = write(tmp_path / "t.cx", "1 2 3\n")
    amb = read_complex(src)
    assert amb.num_faces == 7  # closure fills the boundary in


def test_comments_and_blank_lines(tmp_path):
    src = write(tmp_path / "t.cx", "# header\n\n1 2  # an edge\n\n# done\n")
    amb = read_complex(src)
    assert amb.num_faces == 3


def test_parse_errors_carry_position(tmp_path):
    src = write(tmp_path / "bad.cx", "1 2\nx y\n")
    with pytest.raises(FileFormatError, match=r"bad\.cx:2"):
        read_complex(src)
    src = write(tmp_path / "dup.cx", "1 1 2\n")
    with pytest.raises(FileFormatError, match=r"dup\.cx:1"):
        read_complex(src)
    src = write(tmp_path / "empty.cx", "# nothing\n")
    with pytest.raises(FileFormatError, match="no faces"):
        read_complex(src)


def test_hypergraph_round_trip(tmp_path, delta2):
    h = Hypergraph.from_faces(delta2, [(1,), (1, 2), (1, 2, 3)])
    out = str(tmp_path / "h.hg")
    write_hypergraph(out, h)
    assert open(out, encoding="utf-8").read() == "1\n1 2\n1 2 3\n"
    back = read_hypergraph(out, delta2)
    assert back.mask == h.mask


def test_hypergraph_must_fit_ambient(tmp_path, delta2):
    src = write(tmp_path / "h.hg", "4 5\n")
    with pytest.raises(ValueError):
        read_hypergraph(src, delta2)


def test_write_complex_accepts_closed_hypergraph(tmp_path, delta2):
    closed = Hypergraph.from_faces(delta2, [(1,), (2,), (1, 2)])
    out = str(tmp_path / "sub.cx")
    write_complex(out, closed)
    assert read_complex(out).num_faces == 3
    open_h = Hypergraph.from_faces(delta2, [(1, 2)])
    with pytest.raises(FileFormatError):
        write_complex(out, open_h)


def test_probability_round_trip(tmp_path):
    out = str(tmp_path / "p.json")
    pa = ProbabilityAssignment.from_dims([1.0, 0.5, 0.25])
    write_probability(out, pa)
    assert read_probability(out) == pa


def test_atomic_write_leaves_no_droppings(tmp_path):
    out = str(tmp_path / "f.txt")
    atomic_write(out, "one\n")
    atomic_write(out, "two\n")
    assert open(out).read() == "two\n"
    assert os.listdir(tmp_path) == ["f.txt"]


def test_format_faces():
    assert format_faces([]) == "-"
    assert format_faces([(2, 3), (1,), (1, 2, 3)]) == "1, 2 3, 1 2 3"


def test_write_samples(tmp_path):
    out = str(tmp_path / "s.txt")
    write_samples(out, [[(1,), (1, 2)], []])
    assert open(out).read() == "1, 1 2\n-\n"


def test_stats_csv_round_trips_floats(tmp_path):
    rows = [
        {
            "n": 20,
            "p1": 0.1 + 0.2,  # not representable cleanly; repr must survive
            "samples": 10,
            "prob_dim_le_r": 0.5,
            "prob_dim_eq_r": 0.25,
            "mean_r_faces": 1.75,
        }
    ]
    out = str(tmp_path / "stats.csv")
    write_stats_csv(out, rows)
    lines = open(out).read().splitlines()
    assert lines[0] == "n,p1,samples,prob_dim_le_r,prob_dim_eq_r,mean_r_faces"
    assert float(lines[1].split(",")[1]) == rows[0]["p1"]


# ----- CLI ------------------------------------------------------------------------


@pytest.fixture
def triangle_cx(tmp_path):
    return write(tmp_path / "t.cx", TRIANGLE)


@pytest.fixture
def half_prob(tmp_path):
    path = str(tmp_path / "p.json")
    write_probability(path, ProbabilityAssignment.from_dims([1.0, 0.5, 0.5]))
    return path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cli_gen_requires_seed(capsys, triangle_cx, half_prob):
    code, _, err = run_cli(
        capsys, "gen-hyper", "--ambient", triangle_cx, "--prob", half_prob
    )
    assert code == 2
    assert "seed" in err


def test_cli_gen_hyper_deterministic(capsys, triangle_cx, half_prob):
    argv = (
        "gen-hyper", "--ambient", triangle_cx, "--prob", half_prob,
        "--seed", "5", "--samples", "4",
    )
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert len(out1.splitlines()) == 4
    code3, out3, _ = run_cli(capsys, *argv, "--stream", "1")
    assert code3 == 0 and out3 != out1


def test_cli_gen_complex_closed(capsys, triangle_cx, half_prob, delta2):
    code, out, _ = run_cli(
        capsys, "gen-complex", "--ambient", triangle_cx, "--prob", half_prob,
        "--seed", "6", "--samples", "8",
    )
    assert code == 0
    for line in out.splitlines():
        faces = [] if line == "-" else [
            tuple(int(v) for v in tok.split()) for tok in line.split(", ")
        ]
        mask = delta2.mask_from_faces(faces)
        assert delta2.is_complex_mask(mask)


def test_cli_gen_writes_file(tmp_path, capsys, triangle_cx, half_prob):
    out_path = str(tmp_path / "draws.txt")
    code, out, _ = run_cli(
        capsys, "gen-hyper", "--ambient", triangle_cx, "--prob", half_prob,
        "--seed", "5", "--samples", "2", "--out", out_path,
    )
    assert code == 0 and out == ""
    assert len(open(out_path).read().splitlines()) == 2


def test_cli_push_point_mass(tmp_path, capsys, triangle_cx):
    hg = write(tmp_path / "h.hg", "1 2\n")
    code, out, _ = run_cli(
        capsys, "push", "--ambient", triangle_cx, "--expr", "Delta", "--hyper", hg
    )
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1
    prob, faces = lines[0].split("  ", 1)
    assert float(prob) == 1.0
    assert faces == "1, 2, 1 2"


def test_cli_push_exact_gamma_tv_zero(capsys, triangle_cx, half_prob):
    code, out, _ = run_cli(
        capsys, "push", "--ambient", triangle_cx, "--expr", "gamma",
        "--model", "phyper", "--prob", half_prob,
    )
    assert code == 0
    tv_lines = [l for l in out.splitlines() if l.startswith("TV")]
    assert len(tv_lines) == 1
    assert float(tv_lines[0].rsplit(":", 1)[1]) == 0.0


def test_cli_push_closure_tv_reported(capsys, triangle_cx, half_prob):
    code, out, _ = run_cli(
        capsys, "push", "--ambient", triangle_cx, "--expr", "Delta.Delta",
        "--model", "phyper", "--prob", half_prob,
    )
    assert code == 0
    tv_lines = [l for l in out.splitlines() if l.startswith("TV")]
    assert "(Delta)" in tv_lines[0]
    assert float(tv_lines[0].rsplit(":", 1)[1]) > 0.0


def test_cli_push_monte_carlo(capsys, triangle_cx, half_prob):
    argv = (
        "push", "--ambient", triangle_cx, "--expr", "Delta", "--model", "phyper",
        "--prob", half_prob, "--samples", "200", "--seed", "3",
    )
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    total = sum(float(line.split("  ", 1)[0]) for line in out1.splitlines())
    assert total == pytest.approx(1.0)


def test_cli_push_usage_errors(tmp_path, capsys, triangle_cx, half_prob):
    code, _, err = run_cli(
        capsys, "push", "--ambient", triangle_cx, "--expr", "bogus",
        "--model", "phyper", "--prob", half_prob,
    )
    assert code == 2 and "position" in err
    code, _, err = run_cli(capsys, "push", "--ambient", triangle_cx, "--expr", "Delta")
    assert code == 2
    hg = write(tmp_path / "h.hg", "1\n")
    code, _, err = run_cli(
        capsys, "push", "--ambient", triangle_cx, "--expr", "Delta",
        "--hyper", hg, "--model", "phyper", "--prob", half_prob,
    )
    assert code == 2
    code, _, err = run_cli(
        capsys, "push", "--ambient", triangle_cx,
        "--expr", "Delta /\\ delta", "--model", "phyper", "--prob", half_prob,
    )
    assert code == 2 and "unary" in err


def test_cli_verify_identities_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "identities")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_cli_verify_ambient_override(capsys, triangle_cx):
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "identities", "--ambient", triangle_cx
    )
    assert code == 0
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "theorem2", "--ambient", triangle_cx
    )
    assert code == 1  # joint-law transform comparisons fail by design
    assert "FAIL" in out


def test_cli_verify_unknown_suite(capsys):
    code, _, err = run_cli(capsys, "verify", "--suite", "bogus")
    assert code == 2 and "unknown suite" in err


def test_cli_missing_file(capsys):
    code, _, err = run_cli(
        capsys, "powers", "--file", "nope.hg", "--ambient", "nope.cx"
    )
    assert code == 2 and "nope" in err


def test_cli_figure1_and_powers(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "figure1", "--out-dir", str(tmp_path))
    assert code == 0
    assert sorted(os.listdir(tmp_path)) == ["H1.hg", "H2.hg", "H3.hg", "figure1.cx"]
    want = {"H1": "r=2 t=1", "H2": "r=2 t=2", "H3": "r=1 t=2"}
    for name, expect in want.items():
        code, out, _ = run_cli(
            capsys, "powers",
            "--file", str(tmp_path / f"{name}.hg"),
            "--ambient", str(tmp_path / "figure1.cx"),
        )
        assert code == 0
        assert out.strip() == expect


def test_cli_powers_degenerate(tmp_path, capsys, triangle_cx):
    hg = write(tmp_path / "all.hg", TRIANGLE)
    code, out, _ = run_cli(capsys, "powers", "--file", hg, "--ambient", triangle_cx)
    assert code == 0 and "degenerate" in out


def test_cli_sparse_output_shapes(capsys, tmp_path, half_prob):
    code, out, _ = run_cli(
        capsys, "sparse", "--algorithm", "1", "--n", "5", "--r", "1",
        "--prob", half_prob, "--seed", "9", "--samples", "3",
    )
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert all(" | " in line for line in lines)
    code, out, _ = run_cli(
        capsys, "sparse", "--algorithm", "2", "--n", "5", "--r", "1",
        "--prob", half_prob, "--seed", "9", "--samples", "3",
        "--out", str(tmp_path / "s.txt"),
    )
    assert code == 0
    assert len(open(tmp_path / "s.txt").read().splitlines()) == 3


def test_cli_stats_csv(capsys, tmp_path, half_prob):
    code, out, _ = run_cli(
        capsys, "stats", "--model", "clique", "--n", "6,8", "--r", "2",
        "--samples", "50", "--seed", "4",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("n,p1,samples")
    assert len(lines) == 3
    out_path = str(tmp_path / "c.csv")
    code, _, _ = run_cli(
        capsys, "stats", "--model", "closure", "--n", "6", "--r", "1",
        "--prob", half_prob, "--samples", "50", "--seed", "4", "--out", out_path,
    )
    assert code == 0
    assert len(open(out_path).read().splitlines()) == 2
    code, _, err = run_cli(
        capsys, "stats", "--model", "closure", "--n", "6", "--r", "1",
        "--samples", "50", "--seed", "4",
    )
    assert code == 2 and "prob" in err


def test_cli_normalize(capsys):
    code, out, _ = run_cli(capsys, "normalize", "--expr", "gamma^2")
    assert code == 0 and out.strip() == "id"
    code, out, _ = run_cli(capsys, "normalize", "--expr", "Ext")
    assert code == 0 and out.strip() == "Delta.gamma.delta.gamma"
    code, _, err = run_cli(capsys, "normalize", "--expr", "gamma^")
    assert code == 2


def test_cli_byte_identical_across_processes(tmp_path, triangle_cx, half_prob):
    # determinism must survive process boundaries, not just repeated calls
    argv = [
        sys.executable, "-m", "hyperops", "gen-complex",
        "--ambient", triangle_cx, "--prob", half_prob,
        "--seed", "12", "--samples", "6",
    ]
    first = subprocess.run(argv, capture_output=True, text=True)
    second = subprocess.run(argv, capture_output=True, text=True)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.count("\n") == 6
