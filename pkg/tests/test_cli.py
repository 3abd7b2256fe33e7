"""Command-line surface and context-file serialization."""

import pytest

import nbgroup as nb
from nbgroup.cli import (
    context_to_lines,
    format_coords,
    main,
    parse_coords,
    read_context,
    write_context,
)


def run(args):
    return main(args)


class TestConstruct:
    def test_additive_reference(self, tmp_path, capsys):
        out = tmp_path / "ctx.add5"
        code = run(["construct", "additive", "--p", "5", "--ext", "2,3,0,1",
                    "--a", "1", "--r", "0,1,0", "--out", str(out)])
        assert code == 0
        assert out.exists()
        ctx = read_context(str(out))
        assert ctx.kind == "additive" and ctx.n == 5
        assert ctx.i_vec == nb.CyclicVector(ctx.base, [4, 4, 2, 3, 1])

    def test_kummer_reference(self, tmp_path):
        out = tmp_path / "ctx.kum61"
        code = run(["construct", "kummer", "--q", "61", "--n", "6", "--m", "10",
                    "--a", "2", "--out", str(out)])
        assert code == 0
        ctx = read_context(str(out))
        assert ctx.u_vec == nb.CyclicVector(ctx.base, [1, 9, 21, 20, 22, 52])

    def test_lucas_reference(self, tmp_path):
        out = tmp_path / "ctx.luc7"
        code = run(["construct", "lucas", "--q", "7", "--n", "4", "--alpha", "3",
                    "--gen", "5|1", "--out", str(out)])
        assert code == 0
        ctx = read_context(str(out))
        assert ctx.u_vec == nb.CyclicVector(ctx.base, [0, 3, 0, 5])

    def test_bad_parameters_nonzero_exit_with_error_name(self, capsys):
        code = run(["construct", "kummer", "--q", "61", "--n", "6", "--m", "10",
                    "--a", "4"])
        assert code == 2
        assert "OrderTooSmall" in capsys.readouterr().err

    def test_prime_power_q(self, tmp_path):
        code = run(["construct", "kummer", "--q", "49", "--n", "6", "--m", "8",
                    "--out", str(tmp_path / "c")])
        assert code == 0


@pytest.fixture(scope="module")
def ctx_files(tmp_path_factory):
    root = tmp_path_factory.mktemp("ctx")
    paths = {}
    for name, args in {
        "add5": ["construct", "additive", "--p", "5", "--ext", "2,3,0,1",
                 "--a", "1", "--r", "0,1,0"],
        "kum61": ["construct", "kummer", "--q", "61", "--n", "6", "--m", "10", "--a", "2"],
        "luc7": ["construct", "lucas", "--q", "7", "--n", "4", "--alpha", "3", "--gen", "5|1"],
    }.items():
        path = root / name
        assert run(args + ["--out", str(path), "--trials", "5"]) == 0
        paths[name] = str(path)
    return paths


class TestMul:
    def test_additive_product(self, ctx_files, capsys):
        assert run(["mul", ctx_files["add5"], "--x", "1,3,1,1,2", "--y", "2,1,1,4,2"]) == 0
        assert capsys.readouterr().out.strip() == "1,4,2,2,2"

    def test_kummer_product(self, ctx_files, capsys):
        assert run(["mul", ctx_files["kum61"], "--x", "1,3,1,1,2,1", "--y", "2,1,1,4,2,1"]) == 0
        assert capsys.readouterr().out.strip() == "45,44,11,20,29,54"

    def test_lucas_product(self, ctx_files, capsys):
        assert run(["mul", ctx_files["luc7"], "--x", "1,3,1,1", "--y", "2,1,1,4"]) == 0
        assert capsys.readouterr().out.strip() == "2,5,3,4"

    def test_zero_times_anything(self, ctx_files, capsys):
        assert run(["mul", ctx_files["luc7"], "--x", "0,0,0,0", "--y", "3,1,4,1"]) == 0
        assert capsys.readouterr().out.strip() == "0,0,0,0"

    def test_extension_coordinates_semicolon_form(self, ctx_files, capsys):
        # (eps * theta_0) * theta_0 = eps * theta_0^2, i.e. eps times the
        # reduction vector (4,4,2,3,1)
        assert run(["mul", ctx_files["add5"], "--x", "0,1,0;0;0;0;0", "--y", "1;0;0;0;0"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == "0,4;0,4;0,2;0,3;0,1"

    def test_path_flag(self, ctx_files, capsys):
        for path in ("naive", "fast", "auto"):
            assert run(["mul", ctx_files["kum61"], "--x", "1,0,0,0,0,0",
                        "--y", "0,1,0,0,0,0", "--path", path]) == 0
        outs = {line for line in capsys.readouterr().out.split()}
        assert len(outs) == 1


class TestVerify:
    def test_verify_passes(self, ctx_files, capsys):
        assert run(["verify", ctx_files["luc7"], "--trials", "100", "--seed", "42"]) == 0
        out = capsys.readouterr().out
        assert "100/100 oracle matches" in out
        assert "re-derivation from the parameter echo is bit-exact" in out

    def test_verify_detects_corruption(self, ctx_files, tmp_path, capsys):
        lines = open(ctx_files["kum61"]).read().splitlines()
        bad = [l.replace("i_vec=39", "i_vec=40") if l.startswith("i_vec=") else l for l in lines]
        path = tmp_path / "corrupt"
        path.write_text("\n".join(bad) + "\n")
        assert run(["verify", str(path), "--trials", "5"]) == 1


class TestWeight:
    def test_weights(self, ctx_files, capsys):
        assert run(["weight", ctx_files["add5"]]) == 0
        assert capsys.readouterr().out.strip() == "13"
        assert run(["weight", ctx_files["kum61"]]) == 0
        assert capsys.readouterr().out.strip() == "16"


class TestSerialization:
    def test_round_trip_is_byte_identical(self, ctx_files, tmp_path):
        for path in ctx_files.values():
            ctx = read_context(path)
            again = tmp_path / "again"
            write_context(ctx, str(again))
            assert open(path).read() == open(str(again)).read()

    def test_rebuild_matches_stored_vectors(self, ctx_files):
        from nbgroup.cli import rebuild_from_echo

        for path in ctx_files.values():
            ctx = read_context(path)
            assert context_to_lines(rebuild_from_echo(ctx)) == context_to_lines(ctx)


class TestBench:
    def test_bench_emits_table_and_figure(self, tmp_path, capsys):
        csv = tmp_path / "bench.csv"
        png = tmp_path / "bench.png"
        code = run(["bench", "kummer", "--sizes", "6,12", "--q", "97",
                    "--reps", "5", "--csv", str(csv), "--plot", str(png)])
        assert code == 0
        text = csv.read_text().splitlines()
        assert text[0].startswith("kind,n,q,seconds_per_multiply")
        assert len(text) == 3
        assert png.stat().st_size > 0
        out = capsys.readouterr().out
        assert "convolutions_per_multiply" in out
        # counter column records the 5-convolution pipeline
        assert all(row.split(",")[4] == "5" for row in text[1:])

    def test_bench_lucas_family(self, capsys):
        assert run(["bench", "lucas", "--sizes", "3,4", "--reps", "3"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 3 and lines[1].startswith("lucas,3,")


class TestCoordsHelpers:
    def test_parse_both_forms(self, kum61):
        v1 = parse_coords(kum61.base, "1,2,3,4,5,6", 6)
        v2 = parse_coords(kum61.base, "1;2;3;4;5;6", 6)
        assert v1 == v2

    def test_format_trims_extension_zeros(self, add5):
        vec = nb.CyclicVector(add5.base, [add5.base.raw_from_coeffs([2]),
                                          add5.base.raw_from_coeffs([0, 1])])
        assert format_coords(vec) == "2;0,1"

    def test_parse_length_check(self, kum61):
        with pytest.raises(nb.errors.ParseError):
            parse_coords(kum61.base, "1,2,3", 6)
