import math
from dataclasses import dataclass

import pytest

from hyperdual.expr import ExprAst, evaluate, parse, to_diff_function


@dataclass(frozen=True)
class CorpusCase:
    name: str
    text: str
    point: tuple
    real_analytic: bool = True

    @property
    def ast(self) -> ExprAst:
        return parse(self.text)

    @property
    def func(self):
        return to_diff_function(self.ast)

    def plain(self, x):
        return evaluate(self.ast, x)


MIXED_F = "x1 + x2^2*x3 - x1/x3 + x2^x1"
FOO = "(x1+sqrt(x1))/sqrt(x1)"

CORPUS = [
    CorpusCase("mixed_complex", MIXED_F, (1 + 1j, 2.3, math.pi), real_analytic=False),
    CorpusCase("mixed_real", MIXED_F, (1.0, 2.3, math.pi)),
    CorpusCase("foo", FOO, (4.0,)),
    CorpusCase("rosenbrock", "(1-x1)^2 + 100*(x2-x1^2)^2", (0.5, -0.3)),
    CorpusCase("product", "x1*x2*x3", (1.5, -2.0, 0.75)),
    CorpusCase("rational", "(x1^2 + 1)/(x2^2 + 2)", (0.3, 1.7)),
    CorpusCase("trig", "sin(x1)*cos(x2) + tan(x1*x2)", (0.4, 0.9)),
    CorpusCase("hyperbolic", "sinh(x1) - cosh(x2)*tanh(x1+x2)", (0.2, -0.5)),
    CorpusCase("inverse_trig", "asin(x1/2) + acos(x2/3) + atan(x1*x2)", (0.6, 1.1)),
    CorpusCase("exp_log", "exp(x1)*log(x2) - sqrt(x1*x2)", (0.7, 2.5)),
    CorpusCase("power_chain", "x1^x2 + x2^3 - 2^x1", (1.3, 0.8)),
    CorpusCase("nested", "log(1 + exp(-x1^2) + x2^2*x3)", (0.5, 1.2, 0.3)),
    CorpusCase("complex_trig", "sin(x1)*exp(x2)", (0.3 + 0.4j, -0.2 + 0.1j), real_analytic=False),
]


@pytest.fixture(params=CORPUS, ids=[case.name for case in CORPUS])
def corpus_case(request):
    return request.param


@pytest.fixture(
    params=[case for case in CORPUS if case.real_analytic],
    ids=[case.name for case in CORPUS if case.real_analytic],
)
def real_case(request):
    return request.param


@pytest.fixture
def config_path(tmp_path):
    return tmp_path / "hyperdual_cli.json"
