"""CLI 서브커맨드 테스트 모듈."""

import pytest

from src.cli.commands import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main


def _pie_args(out, *extra):
    return [
        "pie-curve",
        "--eta-nbar-min",
        "1e-3",
        "--eta-nbar-max",
        "1e-2",
        "--eta-nbar-points",
        "3",
        "--out",
        str(out),
        *extra,
    ]


class TestPieCurveCommand:
    """pie-curve 서브커맨드 테스트"""

    def test_writes_csv(self, tmp_path):
        """헤더 + 격자 점 수만큼 행"""
        # Arrange
        out = tmp_path / "pie.csv"

        # Act
        code = main(_pie_args(out))

        # Assert
        assert code == EXIT_OK
        lines = out.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 4
        assert lines[0] == (
            "eta_nbar,pie_analytic_Pi,pie_ppm_poisson,pie_ook_poisson,"
            "pie_ook_dark,capacity_pie,inv_p_analytic,inv_p_ppm,inv_p_ook,"
            "analytic_valid"
        )
        assert lines[1].startswith("0.001,")

    def test_deterministic(self, tmp_path):
        """같은 입력은 바이트 단위로 같은 CSV"""
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        main(_pie_args(first))
        main(_pie_args(second))
        assert first.read_bytes() == second.read_bytes()

    def test_plot(self, tmp_path):
        """--plot 은 SVG 를 기록"""
        plot = tmp_path / "pie.svg"
        code = main(_pie_args(tmp_path / "pie.csv", "--plot", str(plot)))
        assert code == EXIT_OK
        assert "<svg" in plot.read_text(encoding="utf-8")

    def test_stdout_default(self, capsys):
        """--out 이 없으면 stdout 으로 출력"""
        code = main(
            [
                "pie-curve",
                "--eta-nbar-min",
                "1e-3",
                "--eta-nbar-max",
                "2e-3",
                "--eta-nbar-points",
                "2",
            ]
        )
        captured = capsys.readouterr()
        assert code == EXIT_OK
        assert captured.out.startswith("eta_nbar,")
        assert len(captured.out.splitlines()) == 3

    def test_config_file(self, tmp_path):
        """JSON 설정 파일의 격자 사용, CLI 플래그가 우선"""
        config = tmp_path / "sweep.json"
        config.write_text(
            '{"sweep": {"eta_nbar": {"start": 1e-3, "stop": 1e-2, "points": 5}}}',
            encoding="utf-8",
        )
        out = tmp_path / "pie.csv"

        code = main(
            ["pie-curve", "--config", str(config), "--eta-nbar-points", "2", "--out", str(out)]
        )

        assert code == EXIT_OK
        assert len(out.read_text(encoding="utf-8").splitlines()) == 3

    def test_invalid_config(self, tmp_path):
        """잘못된 격자 설정은 종료 코드 2"""
        config = tmp_path / "sweep.json"
        config.write_text(
            '{"sweep": {"eta_nbar": {"start": 1e-2, "stop": 1e-3, "points": 5}}}',
            encoding="utf-8",
        )
        assert main(["pie-curve", "--config", str(config)]) == EXIT_USAGE

    def test_unwritable_output(self, tmp_path, capsys):
        """쓸 수 없는 출력 경로는 종료 코드 1, 메시지에 경로 포함"""
        out = tmp_path / "missing" / "pie.csv"
        code = main(_pie_args(out))
        assert code == EXIT_FAILURE
        assert str(out) in capsys.readouterr().err


class TestRatioMapCommand:
    """ratio-map 서브커맨드 테스트"""

    def test_writes_grid(self, tmp_path):
        """η × n̄ 격자 행"""
        out = tmp_path / "ratio.csv"
        code = main(
            [
                "ratio-map",
                "--eta-min", "0.5", "--eta-max", "1.0", "--eta-points", "2",
                "--nbar-min", "0.01", "--nbar-max", "0.1", "--nbar-points", "2",
                "--out", str(out),
            ]
        )
        assert code == EXIT_OK
        lines = out.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 5
        assert lines[0].startswith("eta,nbar,ratio_ppm,ratio_ook")


class TestOptimizeCommand:
    """optimize 서브커맨드 테스트"""

    def test_text_output(self, capsys):
        """단일광자 최적 점"""
        code = main(
            ["optimize", "--scheme", "ppm", "--family", "fock", "--nbar", "0.01", "--eta", "0.5"]
        )
        out = capsys.readouterr().out
        assert code == EXIT_OK
        fields = dict(
            (name.strip(), value.strip())
            for name, value in (line.split(":", 1) for line in out.splitlines())
        )
        assert fields["scheme"] == "ppm"
        assert fields["family"] == "fock"
        assert float(fields["opt_mu"]) == pytest.approx(1.0, abs=1e-6)

    def test_csv_output(self, capsys):
        """CSV 형식은 헤더 + 1행"""
        code = main(
            ["optimize", "--scheme", "ook", "--nbar", "0.01", "--eta", "1", "--format", "csv"]
        )
        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == (
            "scheme,family,nbar,eta,dark_prob,mi_per_bin,pie,opt_mu,opt_inv_p,capacity_pie"
        )
        assert lines[1].startswith("ook,poisson,0.01,1.0,0.0,")

    def test_missing_nbar(self):
        """필수 인자 누락은 종료 코드 2"""
        with pytest.raises(SystemExit) as exc_info:
            main(["optimize", "--eta", "0.5"])
        assert exc_info.value.code == EXIT_USAGE

    def test_invalid_eta(self):
        """η 범위 밖은 종료 코드 2"""
        with pytest.raises(SystemExit) as exc_info:
            main(["optimize", "--nbar", "0.01", "--eta", "1.5"])
        assert exc_info.value.code == EXIT_USAGE

    def test_unknown_scheme(self):
        """알 수 없는 방식은 종료 코드 2"""
        with pytest.raises(SystemExit) as exc_info:
            main(["optimize", "--scheme", "qam", "--nbar", "0.01", "--eta", "0.5"])
        assert exc_info.value.code == EXIT_USAGE


class TestValidateCommand:
    """validate 서브커맨드 테스트"""

    def test_csv_report(self, capsys):
        """12개 케이스 CSV 와 종료 코드 0"""
        code = main(["validate", "--trials", "20000", "--seed", "0x2A", "--format", "csv"])
        captured = capsys.readouterr()
        lines = captured.out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "case,eps_hat,eps,std_err,sigma,passed"
        assert len(lines) == 13
        assert all(line.endswith(",true") for line in lines[1:])
        assert "12/12 passed" in captured.err

    def test_invalid_trials(self):
        """trials < 1 은 종료 코드 2"""
        with pytest.raises(SystemExit) as exc_info:
            main(["validate", "--trials", "0"])
        assert exc_info.value.code == EXIT_USAGE
