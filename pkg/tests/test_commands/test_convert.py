from app.main import main


def test_convert_json_to_plain(tmp_path, octahedron_file, capsys):
    """Test conversion by output suffix"""
    target = tmp_path / "octahedron.txt"
    assert main(["--out", str(tmp_path), "convert", str(octahedron_file), str(target)]) == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "# name: octahedron"
    assert lines[1] == "x1 x2 x3"
    assert "plain, sha256" in capsys.readouterr().out


def test_convert_round_trip_keeps_facets(tmp_path, octahedron_file):
    """Test plain back to JSON"""
    plain = tmp_path / "octahedron.txt"
    back = tmp_path / "back.json"
    main(["--out", str(tmp_path), "convert", str(octahedron_file), str(plain)])
    assert main(["--out", str(tmp_path), "convert", str(plain), str(back)]) == 0
    assert back.read_text().count("\"x1\"") >= 1


def test_convert_malformed_input(tmp_path, capsys):
    """Test the exit code and message for a bad facet line"""
    source = tmp_path / "bad.txt"
    source.write_text("a b c\na a b\n")
    assert main(["--out", str(tmp_path), "convert", str(source), str(tmp_path / "out.json")]) == 1
    assert "line 2" in capsys.readouterr().err


def test_convert_missing_file(tmp_path):
    """Test that a missing input file fails cleanly"""
    assert main(["--out", str(tmp_path), "convert", str(tmp_path / "nope.txt"), str(tmp_path / "x.json")]) == 1
