import json

import pytest

from app.main import main


def test_build_cross_polytope(tmp_path, capsys):
    """Test building the octahedron as JSON"""
    assert main(["--out", str(tmp_path), "build", "cross-polytope", "--d", "3"]) == 0
    document = json.loads((tmp_path / "cross_polytope_3.json").read_text())
    assert len(document["facets"]) == 8
    assert document["involution"]["x1"] == "y1"
    assert "6 vertices" in capsys.readouterr().out


def test_build_b_complex_plain(tmp_path):
    """Test the plain format of B(1,4)"""
    assert main(["--out", str(tmp_path), "--format", "plain", "build", "b-complex", "--d", "4", "--i", "1"]) == 0
    lines = (tmp_path / "b_complex_1_4.txt").read_text().splitlines()
    assert lines[0] == "# name: B(1,4)"
    assert len(lines) == 1 + 8


def test_build_gamma_belt(tmp_path):
    """Test one belt of the 5-cross-polytope"""
    assert main(["--out", str(tmp_path), "build", "gamma-belt", "--d", "5", "--j", "2"]) == 0
    assert len(json.loads((tmp_path / "gamma_2_5.json").read_text())["facets"]) == 5


def test_build_balanced_product_with_intermediates(tmp_path):
    """Test that the intermediates are written next to Sigma"""
    code = main(["--out", str(tmp_path), "build", "balanced-product", "--d", "4", "--emit-intermediates"])
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert "balanced_product_4.json" in names
    assert "balanced_product_4_tube.json" in names
    assert len(names) == 7


def test_build_inductive_circle(tmp_path):
    """Test the circle seed step"""
    assert main(["--out", str(tmp_path), "build", "inductive", "--d", "4"]) == 0
    assert (tmp_path / "inductive_circle_4.json").exists()


def test_build_rejects_small_dimension(tmp_path, capsys):
    """Test that a too small d is a validation error"""
    assert main(["--out", str(tmp_path), "build", "cs-product", "--d", "4"]) == 1
    assert "error: Validation failed" in capsys.readouterr().err


def test_build_requires_d():
    """Test that argparse enforces --d"""
    with pytest.raises(SystemExit):
        main(["build", "cross-polytope"])


@pytest.mark.parametrize("args,filename", [
    (["balanced-product", "--d", "4"], "balanced_product_4.json"),
    (["b-complex", "--d", "5", "--i", "2"], "b_complex_2_5.json"),
    (["cs-product", "--d", "5"], "cs_product_5.json"),
])
def test_rebuild_is_byte_identical(tmp_path, args, filename):
    """Test that building the same target twice writes the same bytes"""
    first, second = tmp_path / "first", tmp_path / "second"
    assert main(["--out", str(first), "build"] + args) == 0
    assert main(["--out", str(second), "build"] + args) == 0
    assert (first / filename).read_bytes() == (second / filename).read_bytes()
