"""
Testes da linha de comando.

Este módulo testa:
- Mescla de ambiente e flags na configuração de execução
- Códigos de saída (0, 2, 64)
- Relatórios gravados pelos comandos curve, aut e lemmas
"""

import pytest
import orjson

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gkgalois import cli
from gkgalois.errors import CurveConsistencyError
from gkgalois.gkcurve import SPACE_VARS, build_curve, gk_forms
from gkgalois.polyseries import MultiPoly


def _raise_consistency(curve, run):
    raise CurveConsistencyError("contagem divergente")


def _corrupted_curve():
    """Curva com Z^(q+1) somado a F1; a nuvem de pontos continua a da curva GK."""
    curve = build_curve(2, m_max=1, verify=False)

    def forms(F):
        f1, f2 = gk_forms(2, F)
        return f1 + MultiPoly.variable(F, SPACE_VARS, "Z") ** 3, f2

    curve.forms = forms
    curve.F1, curve.F2 = forms(curve.work)
    return curve


class TestArguments:
    """Testes do parser e da configuração efetiva."""

    def test_flags_override_env(self, clean_env, monkeypatch):
        """Testa que as flags têm precedência sobre o ambiente."""
        monkeypatch.setenv("GKG_JOBS", "4")
        monkeypatch.setenv("GKG_SAMPLE", "10")
        args = cli.build_parser().parse_args(["sweep", "--q", "3", "--jobs", "2", "--seed", "0x10"])
        run = cli.run_config_from_args(args)
        assert run.q == 3
        assert run.jobs == 2
        assert run.sample == 10
        assert run.seed == 16
        assert run.output == str(clean_env / "reports")

    def test_context_params(self, clean_env):
        """Testa os parâmetros do contexto da varredura."""
        args = cli.build_parser().parse_args(["points", "--q", "2", "--sample", "7"])
        run = cli.run_config_from_args(args)
        assert cli.context_params(run)["sample"] == 7
        assert cli.context_params(run, sample=0) == {
            "q": 2,
            "m_max": 3,
            "sample": 0,
            "seed": 0x6B6B,
            "table_limit": 1 << 22,
        }

    def test_missing_q(self, clean_env):
        """Testa que --q é obrigatório."""
        with pytest.raises(SystemExit) as exc:
            cli.main(["curve"])
        assert exc.value.code == 2

    def test_version(self, capsys):
        """Testa --version."""
        with pytest.raises(SystemExit) as exc:
            cli.main(["--version"])
        assert exc.value.code == 0
        assert "gkgalois" in capsys.readouterr().out


class TestExitCodes:
    """Testes dos códigos de saída."""

    def test_unsupported_q(self, clean_env, capsys):
        """Testa erro de uso para q fora do intervalo."""
        assert cli.main(["curve", "--q", "7"]) == cli.EXIT_USAGE
        assert "erro de uso" in capsys.readouterr().err

    def test_invalid_format(self, clean_env):
        """Testa erro de uso para formato inválido."""
        assert cli.main(["aut", "--q", "2", "--format", "xml"]) == cli.EXIT_USAGE

    def test_invalid_environment(self, clean_env, monkeypatch):
        """Testa erro de uso para ambiente inválido."""
        monkeypatch.setenv("GKG_BACKEND", "threads")
        assert cli.main(["curve", "--q", "2"]) == cli.EXIT_USAGE

    def test_domain_error(self, clean_env, mocker, capsys):
        """Testa que erros do domínio viram divergência."""
        mocker.patch.dict(cli.COMMANDS, {"curve": lambda run: _raise_consistency(None, run)})
        assert cli.main(["curve", "--q", "2"]) == cli.EXIT_MISMATCH
        assert "CurveConsistencyError" in capsys.readouterr().err


class TestCommands:
    """Testes dos comandos com q = 2."""

    def test_curve(self, clean_env, capsys):
        """Testa o relatório da curva com contagens de Hasse–Weil."""
        assert cli.main(["curve", "--q", "2", "--m-max", "2"]) == cli.EXIT_OK
        path = clean_env / "reports" / "curve_q2.json"
        data = orjson.loads(path.read_bytes())
        assert data["genus"] == 10
        assert data["counts"] == data["hasse_weil"]
        assert sorted(data["counts"].values()) == [225, 2817]
        assert data["birationality"]["injective_off_singular"] is True
        assert "jobs" not in data["config"]
        assert "relatório:" in capsys.readouterr().out

    def test_aut(self, clean_env, capsys):
        """Testa o relatório de automorfismos em texto."""
        assert cli.main(["aut", "--q", "2", "--format", "text"]) == cli.EXIT_OK
        text = (clean_env / "reports" / "aut_q2.txt").read_text(encoding="utf-8")
        assert "|Aut| = 648" in text
        assert "FALHOU" not in text

    def test_lemmas_failure(self, clean_env, mocker, capsys):
        """Testa que a primeira verificação falha é reportada com código 2."""
        mocker.patch.object(
            cli,
            "LEMMAS",
            [
                ("ok", lambda curve, run: (True, {})),
                ("x", lambda curve, run: (False, {"motivo": "injetado"})),
                ("erro", _raise_consistency),
            ],
        )
        assert cli.main(["lemmas", "--q", "2", "--m-max", "1"]) == cli.EXIT_MISMATCH
        assert "FALHA: x" in capsys.readouterr().out
        data = orjson.loads((clean_env / "reports" / "lemmas_q2.json").read_bytes())
        results = {r["name"]: r for r in data["results"]}
        assert results["ok"]["passed"] is True
        assert results["erro"]["passed"] is False
        assert results["erro"]["detail"] == {"erro": "contagem divergente"}
        assert "riemann_hurwitz" in results

    def test_lemmas_pass(self, clean_env, capsys):
        """Testa que todas as verificações passam com q = 2."""
        assert cli.main(["lemmas", "--q", "2"]) == cli.EXIT_OK
        assert "FALHA" not in capsys.readouterr().out
        data = orjson.loads((clean_env / "reports" / "lemmas_q2.json").read_bytes())
        results = {r["name"]: r for r in data["results"]}
        assert all(r["passed"] for r in results.values())
        assert results["bezout_sums"]["detail"]["checked"] == 85
        assert results["bezout_sums"]["detail"]["outside_tower"] == 27
        assert results["bezout_sums"]["detail"]["failures"] == []

    def test_lemmas_detect_corrupted_curve(self, clean_env, mocker, capsys):
        """Testa que uma forma adulterada da curva é apontada pelo lema que falha."""
        mocker.patch.object(cli, "_curve", return_value=_corrupted_curve())
        mocker.patch.object(cli, "rh_check_tame", side_effect=CurveConsistencyError("fibra divergente"))
        assert cli.main(["lemmas", "--q", "2", "--m-max", "1"]) == cli.EXIT_MISMATCH
        assert "FALHA: order_values" in capsys.readouterr().out
        data = orjson.loads((clean_env / "reports" / "lemmas_q2.json").read_bytes())
        results = {r["name"]: r for r in data["results"]}
        assert results["genus_identity"]["passed"] is True
        assert results["order_values"]["passed"] is False
        assert results["riemann_hurwitz"]["detail"] == {"erro": "fibra divergente"}

    def test_report_independent_of_output_directory(self, clean_env):
        """Testa que o diretório de saída não altera o conteúdo do relatório."""
        for name in ("a", "b"):
            args = ["curve", "--q", "2", "--m-max", "1", "--out", str(clean_env / name)]
            assert cli.main(args) == cli.EXIT_OK
        first = (clean_env / "a" / "curve_q2.json").read_bytes()
        second = (clean_env / "b" / "curve_q2.json").read_bytes()
        assert first == second


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
