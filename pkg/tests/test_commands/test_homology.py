import json

from app.main import main


def test_homology_plain_lines(tmp_path, octahedron_file, capsys):
    """Test the H_k lines of the octahedron"""
    assert main(["--out", str(tmp_path), "--format", "plain", "homology", str(octahedron_file)]) == 0
    assert capsys.readouterr().out.splitlines() == ["H_0 = Z^0", "H_1 = Z^0", "H_2 = Z^1"]


def test_homology_json_unreduced(tmp_path, octahedron_file, capsys):
    """Test the JSON profile in the unreduced convention"""
    assert main(["--out", str(tmp_path), "--format", "json", "homology", str(octahedron_file), "--unreduced"]) == 0
    profile = json.loads(capsys.readouterr().out)
    assert profile["betti"] == [1, 0, 1]
    assert profile["reduced"] is False


def test_homology_with_transforms(tmp_path, capsys):
    """Test the projective plane with verified Smith transforms"""
    source = tmp_path / "rp2.txt"
    source.write_text("\n".join([
        "1 2 3", "1 3 4", "1 4 5", "1 5 6", "1 2 6",
        "2 3 5", "2 4 5", "2 4 6", "3 4 6", "3 5 6",
    ]) + "\n")
    code = main(["--out", str(tmp_path), "--format", "plain", "homology", str(source), "--verify-transforms"])
    assert code == 0
    assert "H_1 = Z^0 + Z/2" in capsys.readouterr().out


def test_homology_lines_by_default(tmp_path, capsys):
    """Test that without --format the H_k lines are printed"""
    source = tmp_path / "triangle.txt"
    source.write_text("a b\nb c\na c\n")
    assert main(["--out", str(tmp_path), "homology", str(source)]) == 0
    assert capsys.readouterr().out.splitlines() == ["H_0 = Z^0", "H_1 = Z^1"]
