"""Built-in classification catalog.

Case templates use parameter symbols (p, q, nu, eps, epsp, delta, sigma)
and function slots (fhat, ghat, mu, g2) that instantiations bind; a slot's
argument expression is recorded per case and the instantiation supplies
the slot body in the symbol w.  Vector-field templates are component
triples over (t, x, u).  Rows whose discrete parameters label genuinely
inequivalent equations are split into sub-cases; the split yields 45
sub-case entries over 39 rows.
"""

# --- classification cases --------------------------------------------------
# id, f, g, slots, basis, subcases (discrete assignments + >=2 defaults),
# regular flag, optional solver probe, optional extra (non-closed) slice.

CASES = {
    "1": {
        "f": "fhat*abs(u)^p",
        "g": "ghat*abs(u)^p*u",
        "slots": {"fhat": "x - delta*ln(abs(u))", "ghat": "x - delta*ln(abs(u))"},
        "basis": [("-p*t", "2*delta", "2*u")],
        "constraints": "p != 0",
        "regular": True,
        "subcases": [
            {
                "id": "1[d0]",
                "assign": {"delta": 0},
                "defaults": [
                    {"p": 1, "fhat": "w", "ghat": "w^2"},
                    {"p": 2, "fhat": "w^2+1", "ghat": "w"},
                ],
            },
            {
                "id": "1[d1]",
                "assign": {"delta": 1},
                "defaults": [
                    {"p": 3, "fhat": "exp(w)", "ghat": "exp(2*w)"},
                    {"p": 1, "fhat": "w", "ghat": "1"},
                ],
            },
        ],
    },
    "2": {
        "f": "fhat*exp(x)",
        "g": "ghat*exp(x)",
        "slots": {"fhat": "u", "ghat": "u"},
        "basis": [("t", "-2", "0")],
        "regular": True,
        "subcases": [
            {
                "id": "2",
                "assign": {},
                "defaults": [
                    {"fhat": "w", "ghat": "w^2"},
                    {"fhat": "w^2+1", "ghat": "w^3"},
                ],
            }
        ],
    },
    "3": {
        "f": "fhat*exp(u)",
        "g": "ghat*exp(u)",
        "slots": {"fhat": "x", "ghat": "x"},
        "basis": [("t", "0", "-2")],
        "regular": True,
        "subcases": [
            {
                "id": "3",
                "assign": {},
                "defaults": [
                    {"fhat": "w", "ghat": "w^2"},
                    {"fhat": "w+1", "ghat": "1"},
                ],
            }
        ],
    },
    "4": {
        "f": "fhat",
        "g": "ghat",
        "slots": {"fhat": "u", "ghat": "u"},
        "basis": [("0", "1", "0")],
        "constraints": "fhat not constant",
        "regular": True,
        "subcases": [
            {
                "id": "4",
                "assign": {},
                "defaults": [
                    {"fhat": "w^2+1", "ghat": "w^3"},
                    {"fhat": "w", "ghat": "w^3+w^2"},
                ],
            }
        ],
    },
    "5a": {
        "f": "eps",
        "g": "ghat",
        "slots": {"ghat": "u"},
        "basis": [("0", "1", "0"), ("x", "eps*t", "0")],
        "regular": False,
        "singular_witness": 1,
        "subcases": [
            {
                "id": "5a[+]",
                "assign": {"eps": 1},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^3+w"}],
            },
            {
                "id": "5a[-]",
                "assign": {"eps": -1},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^4+w^2"}],
            },
        ],
    },
    "5b": {
        "f": "1",
        "g": "ghat*exp(-2*x)",
        "slots": {"ghat": "u"},
        "basis": [
            ("exp(x+t)", "exp(x+t)", "0"),
            ("exp(x-t)", "-exp(x-t)", "0"),
        ],
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "5b",
                "assign": {},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^4"}],
            }
        ],
    },
    "5c": {
        "f": "-1",
        "g": "ghat*exp(-2*x)",
        "slots": {"ghat": "u"},
        "basis": [
            ("exp(x)*cos(t)", "-exp(x)*sin(t)", "0"),
            ("exp(x)*sin(t)", "exp(x)*cos(t)", "0"),
        ],
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "5c",
                "assign": {},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^4"}],
            }
        ],
    },
    "6a": {
        "f": "eps",
        "g": "ghat*x^(-2)",
        "slots": {"ghat": "u"},
        "basis": [("t", "x", "0"), ("t^2+eps*x^2", "2*t*x", "0")],
        "regular": False,
        "singular_witness": 1,
        "subcases": [
            {
                "id": "6a[+]",
                "assign": {"eps": 1},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^4"}],
            },
            {
                "id": "6a[-]",
                "assign": {"eps": -1},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^4"}],
            },
        ],
    },
    "6b": {
        "f": "1",
        "g": "ghat*cos(x)^(-2)",
        "slots": {"ghat": "u"},
        "basis": [
            ("-cos(t)*sin(x)", "-sin(t)*cos(x)", "0"),
            ("-sin(t)*sin(x)", "cos(t)*cos(x)", "0"),
        ],
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "6b",
                "assign": {},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^4"}],
            }
        ],
    },
    "6c": {
        "f": "1",
        "g": "-ghat*cosh(x)^(-2)",
        "slots": {"ghat": "u"},
        "basis": [
            ("exp(t)*sinh(x)", "exp(t)*cosh(x)", "0"),
            ("exp(-t)*sinh(x)", "-exp(-t)*cosh(x)", "0"),
        ],
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "6c",
                "assign": {},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^4"}],
            }
        ],
    },
    "6d": {
        "f": "1",
        "g": "ghat*sinh(x)^(-2)",
        "slots": {"ghat": "u"},
        "basis": [
            ("exp(t)*cosh(x)", "exp(t)*sinh(x)", "0"),
            ("exp(-t)*cosh(x)", "-exp(-t)*sinh(x)", "0"),
        ],
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "6d",
                "assign": {},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^4"}],
            }
        ],
    },
    "6e": {
        "f": "-1",
        "g": "ghat*cos(x)^(-2)",
        "slots": {"ghat": "u"},
        "basis": [
            ("-exp(t)*sin(x)", "exp(t)*cos(x)", "0"),
            ("-exp(-t)*sin(x)", "-exp(-t)*cos(x)", "0"),
        ],
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "6e",
                "assign": {},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^4"}],
            }
        ],
    },
    "6f": {
        "f": "-1",
        "g": "ghat*sinh(x)^(-2)",
        "slots": {"ghat": "u"},
        "basis": [
            ("cos(t)*cosh(x)", "-sin(t)*sinh(x)", "0"),
            ("sin(t)*cosh(x)", "cos(t)*sinh(x)", "0"),
        ],
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "6f",
                "assign": {},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^4"}],
            }
        ],
    },
    "7": {
        "f": "-1",
        "g": "ghat*cosh(x)^(-2)",
        "slots": {"ghat": "u"},
        "basis": [
            ("cos(t)*sinh(x)", "-sin(t)*cosh(x)", "0"),
            ("sin(t)*sinh(x)", "cos(t)*cosh(x)", "0"),
        ],
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "7",
                "assign": {},
                "defaults": [{"ghat": "w^3+w^2"}, {"ghat": "w^4"}],
            }
        ],
    },
    "8a": {
        "f": "eps*u^(-4)",
        "g": "mu*u^(-3)",
        "slots": {"mu": "x"},
        "basis": [("2*t", "0", "u"), ("t^2", "0", "t*u")],
        "constraints": "mu_x != 0",
        "regular": False,
        "singular_witness": 1,
        "subcases": [
            {
                "id": "8a",
                "assign": {},
                "defaults": [{"eps": 1, "mu": "w"}, {"eps": -1, "mu": "w^2+w"}],
            }
        ],
    },
    "8b": {
        "f": "eps*u^(-4)",
        "g": "mu*u^(-3)+u",
        "slots": {"mu": "x"},
        "basis": [
            ("exp(2*t)", "0", "u*exp(2*t)"),
            ("exp(-2*t)", "0", "-u*exp(-2*t)"),
        ],
        "constraints": "mu_x != 0",
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "8b",
                "assign": {},
                "defaults": [{"eps": 1, "mu": "w"}, {"eps": -1, "mu": "w^2+w"}],
            }
        ],
    },
    "8c": {
        "f": "eps*u^(-4)",
        "g": "mu*u^(-3)-u",
        "slots": {"mu": "x"},
        "basis": [
            ("cos(2*t)", "0", "-u*sin(2*t)"),
            ("sin(2*t)", "0", "u*cos(2*t)"),
        ],
        "constraints": "mu_x != 0",
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "8c",
                "assign": {},
                "defaults": [{"eps": 1, "mu": "w"}, {"eps": -1, "mu": "w^2+w"}],
            }
        ],
    },
    "9": {
        "f": "eps*exp(x)*abs(u)^p",
        "g": "nu*exp(x)*abs(u)^p*u",
        "slots": {},
        "basis": [("0", "p", "-u"), ("t", "-2", "0")],
        "constraints": "p != 0, nu != 0",
        "regular": True,
        "subcases": [
            {
                "id": "9",
                "assign": {},
                "defaults": [
                    {"p": 1, "eps": 1, "nu": 1},
                    {"p": 3, "eps": -1, "nu": 2},
                ],
            }
        ],
    },
    "10": {
        "f": "eps*x^2*exp(u)",
        "g": "nu*exp(u)",
        "slots": {},
        "basis": [("0", "x", "0"), ("t", "0", "-2")],
        "constraints": "nu != 0",
        "regular": True,
        "subcases": [
            {
                "id": "10",
                "assign": {},
                "defaults": [{"eps": 1, "nu": 1}, {"eps": -1, "nu": 3}],
            }
        ],
    },
    "11": {
        "f": "fhat",
        "g": "0",
        "slots": {"fhat": "u"},
        "basis": [("0", "1", "0"), ("t", "x", "0")],
        "constraints": "fhat not a power law",
        "regular": True,
        "probe": {"inst": 0, "degree": 1, "extra_basis": (), "expect_dim": 3},
        "subcases": [
            {
                "id": "11",
                "assign": {},
                "defaults": [{"fhat": "w^2+w"}, {"fhat": "exp(w)+w"}],
            }
        ],
    },
    "12": {
        "f": "eps*exp(u)",
        "g": "epsp*exp(q*u)",
        "slots": {},
        "basis": [("0", "1", "0"), ("q*t", "(q-1)*x", "-2")],
        "constraints": "q != 0, 1",
        "regular": True,
        "subcases": [
            {
                "id": "12",
                "assign": {},
                "defaults": [
                    {"q": 2, "eps": 1, "epsp": 1},
                    {"q": 3, "eps": -1, "epsp": -1},
                ],
            }
        ],
    },
    "13": {
        "f": "eps*abs(u)^p",
        "g": "epsp*abs(u)^q",
        "slots": {},
        "basis": [("0", "1", "0"), ("(1-q)*t", "(1+p-q)*x", "2*u")],
        "constraints": "p != 0",
        "regular": True,
        "subcases": [
            {
                "id": "13",
                "assign": {},
                "defaults": [
                    {"p": 2, "q": 3, "eps": 1, "epsp": 1},
                    {"p": 1, "q": 3, "eps": 1, "epsp": -1},
                ],
            }
        ],
    },
    "14a": {
        "f": "eps*u^(-4)",
        "g": "epsp*u^(-3)",
        "slots": {},
        "basis": [("2*t", "0", "u"), ("t^2", "0", "t*u"), ("0", "1", "0")],
        "regular": False,
        "singular_witness": 1,
        "probe": {"inst": 0, "degree": 2, "extra_basis": (), "expect_dim": 4},
        "subcases": [
            {
                "id": "14a",
                "assign": {},
                "defaults": [{"eps": 1, "epsp": 1}, {"eps": -1, "epsp": -1}],
            }
        ],
    },
    "14b": {
        "f": "eps*u^(-4)",
        "g": "epsp*u^(-3)+u",
        "slots": {},
        "basis": [
            ("exp(2*t)", "0", "u*exp(2*t)"),
            ("exp(-2*t)", "0", "-u*exp(-2*t)"),
            ("0", "1", "0"),
        ],
        "regular": False,
        "singular_witness": 0,
        "probe": {"inst": 0, "degree": 2, "extra_basis": ("exp2t",), "expect_dim": 4},
        "subcases": [
            {
                "id": "14b",
                "assign": {},
                "defaults": [{"eps": 1, "epsp": 1}, {"eps": -1, "epsp": 1}],
            }
        ],
    },
    "14c": {
        "f": "eps*u^(-4)",
        "g": "epsp*u^(-3)-u",
        "slots": {},
        "basis": [
            ("cos(2*t)", "0", "-u*sin(2*t)"),
            ("sin(2*t)", "0", "u*cos(2*t)"),
            ("0", "1", "0"),
        ],
        "regular": False,
        "singular_witness": 0,
        "probe": {"inst": 0, "degree": 2, "extra_basis": ("trig2t",), "expect_dim": 4},
        "subcases": [
            {
                "id": "14c",
                "assign": {},
                "defaults": [{"eps": 1, "epsp": 1}, {"eps": -1, "epsp": 1}],
            }
        ],
    },
    "14d": {
        "f": "eps*u^4",
        "g": "epsp*u",
        "slots": {},
        "basis": [("0", "1", "0"), ("0", "2*x", "u"), ("0", "x^2", "x*u")],
        "regular": True,
        "probe": {"inst": 0, "degree": 2, "extra_basis": (), "expect_dim": 4},
        "subcases": [
            {
                "id": "14d",
                "assign": {},
                "defaults": [{"eps": 1, "epsp": 1}, {"eps": -1, "epsp": -1}],
            }
        ],
    },
    "15a": {
        "f": "eps*u^(-4)",
        "g": "nu*x^(-2)*u^(-3)",
        "slots": {},
        "basis": [("2*t", "0", "u"), ("t^2", "0", "t*u"), ("0", "2*x", "-u")],
        "constraints": "nu != 0",
        "regular": False,
        "singular_witness": 1,
        "subcases": [
            {
                "id": "15a",
                "assign": {},
                "defaults": [{"eps": 1, "nu": 1}, {"eps": -1, "nu": 2}],
            }
        ],
    },
    "15b": {
        "f": "eps*u^(-4)",
        "g": "nu*x^(-2)*u^(-3)+u",
        "slots": {},
        "basis": [
            ("exp(2*t)", "0", "u*exp(2*t)"),
            ("exp(-2*t)", "0", "-u*exp(-2*t)"),
            ("0", "2*x", "-u"),
        ],
        "constraints": "nu != 0",
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "15b",
                "assign": {},
                "defaults": [{"eps": 1, "nu": 1}, {"eps": -1, "nu": 2}],
            }
        ],
    },
    "15c": {
        "f": "eps*u^(-4)",
        "g": "nu*x^(-2)*u^(-3)-u",
        "slots": {},
        "basis": [
            ("cos(2*t)", "0", "-u*sin(2*t)"),
            ("sin(2*t)", "0", "u*cos(2*t)"),
            ("0", "2*x", "-u"),
        ],
        "constraints": "nu != 0",
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "15c",
                "assign": {},
                "defaults": [{"eps": 1, "nu": 1}, {"eps": -1, "nu": 2}],
            }
        ],
    },
    "16": {
        "f": "eps*abs(u)^p",
        "g": "0",
        "slots": {},
        "basis": [("0", "1", "0"), ("t", "x", "0"), ("0", "p*x", "2*u")],
        "constraints": "p != 0, +-4",
        "regular": True,
        "probe": {"inst": 0, "degree": 2, "extra_basis": (), "expect_dim": 4},
        "subcases": [
            {
                "id": "16",
                "assign": {},
                "defaults": [{"p": 1, "eps": 1}, {"p": 3, "eps": -1}],
            }
        ],
    },
    "17": {
        "f": "eps*exp(u)",
        "g": "0",
        "slots": {},
        "basis": [("0", "1", "0"), ("t", "x", "0"), ("0", "x", "2")],
        "regular": True,
        "subcases": [
            {
                "id": "17",
                "assign": {},
                "defaults": [{"eps": 1}, {"eps": -1}],
            }
        ],
    },
    "18a": {
        "f": "eps",
        "g": "epsp*abs(u)^q",
        "slots": {},
        "basis": [
            ("0", "1", "0"),
            ("eps*x", "t", "0"),
            ("(q-1)*t", "(q-1)*x", "-2*u"),
        ],
        "constraints": "q != 0, 1",
        "regular": False,
        "singular_witness": 1,
        "subcases": [
            {
                "id": "18a[+]",
                "assign": {"eps": 1},
                "defaults": [{"q": 3, "epsp": 1}, {"q": 2, "epsp": -1}],
            },
            {
                "id": "18a[-]",
                "assign": {"eps": -1},
                "defaults": [{"q": 3, "epsp": 1}, {"q": 2, "epsp": -1}],
            },
        ],
    },
    "18b": {
        "f": "1",
        "g": "epsp*abs(u)^q*exp(-2*x)",
        "slots": {},
        "basis": [
            ("exp(x+t)", "exp(x+t)", "0"),
            ("exp(x-t)", "-exp(x-t)", "0"),
            ("0", "q-1", "2*u"),
        ],
        "constraints": "q != 0, 1",
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "18b",
                "assign": {},
                "defaults": [{"q": 3, "epsp": 1}, {"q": 2, "epsp": -1}],
            }
        ],
    },
    "18c": {
        "f": "-1",
        "g": "epsp*abs(u)^q*exp(-2*x)",
        "slots": {},
        "basis": [
            ("exp(x)*cos(t)", "-exp(x)*sin(t)", "0"),
            ("exp(x)*sin(t)", "exp(x)*cos(t)", "0"),
            ("0", "q-1", "2*u"),
        ],
        "constraints": "q != 0, 1",
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "18c",
                "assign": {},
                "defaults": [{"q": 3, "epsp": 1}, {"q": 2, "epsp": -1}],
            }
        ],
    },
    "19a": {
        "f": "eps*u^(-4)",
        "g": "0",
        "slots": {},
        "basis": [
            ("2*t", "0", "u"),
            ("t^2", "0", "t*u"),
            ("0", "1", "0"),
            ("0", "2*x", "-u"),
        ],
        "regular": False,
        "singular_witness": 1,
        "probe": {"inst": 0, "degree": 2, "extra_basis": (), "expect_dim": 5},
        "subcases": [
            {
                "id": "19a",
                "assign": {},
                "defaults": [{"eps": 1}, {"eps": -1}],
            }
        ],
    },
    "19b": {
        "f": "eps*u^(-4)",
        "g": "u",
        "slots": {},
        "basis": [
            ("exp(2*t)", "0", "u*exp(2*t)"),
            ("exp(-2*t)", "0", "-u*exp(-2*t)"),
            ("0", "1", "0"),
            ("0", "2*x", "-u"),
        ],
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "19b",
                "assign": {},
                "defaults": [{"eps": 1}, {"eps": -1}],
            }
        ],
    },
    "19c": {
        "f": "eps*u^(-4)",
        "g": "-u",
        "slots": {},
        "basis": [
            ("cos(2*t)", "0", "-u*sin(2*t)"),
            ("sin(2*t)", "0", "u*cos(2*t)"),
            ("0", "1", "0"),
            ("0", "2*x", "-u"),
        ],
        "regular": False,
        "singular_witness": 0,
        "subcases": [
            {
                "id": "19c",
                "assign": {},
                "defaults": [{"eps": 1}, {"eps": -1}],
            }
        ],
    },
    "19d": {
        "f": "eps*u^4",
        "g": "0",
        "slots": {},
        "basis": [
            ("0", "1", "0"),
            ("t", "x", "0"),
            ("0", "2*x", "u"),
            ("0", "x^2", "x*u"),
        ],
        "regular": True,
        "probe": {"inst": 0, "degree": 2, "extra_basis": (), "expect_dim": 5},
        "subcases": [
            {
                "id": "19d",
                "assign": {},
                "defaults": [{"eps": 1}, {"eps": -1}],
            }
        ],
    },
    "20": {
        "f": "eps",
        "g": "epsp*exp(u)",
        "slots": {},
        # degree <= 1 slice of the family tau dt + xi dx - 2 tau_t du,
        # with tau_t = xi_x, xi_t = eps tau_x; this slice is a subalgebra
        "basis": [("0", "1", "0"), ("t", "x", "-2"), ("x", "eps*t", "0")],
        "regular": False,
        "singular_witness": 2,
        "subcases": [
            {
                "id": "20[+;+]",
                "assign": {"eps": 1, "epsp": 1},
                "defaults": [{}, {}],
                "slice": [
                    ("t^2+x^2", "2*t*x", "-4*t"),
                    ("t^3+3*t*x^2", "3*t^2*x+x^3", "-6*t^2-6*x^2"),
                ],
            },
            {
                "id": "20[-;+]",
                "assign": {"eps": -1, "epsp": 1},
                "defaults": [{}, {}],
                "slice": [
                    ("t^2-x^2", "2*t*x", "-4*t"),
                    ("t^3-3*t*x^2", "3*t^2*x-x^3", "-6*t^2+6*x^2"),
                ],
            },
            {
                "id": "20[-;-]",
                "assign": {"eps": -1, "epsp": -1},
                "defaults": [{}, {}],
                "slice": [
                    ("t^2-x^2", "2*t*x", "-4*t"),
                    ("t^3-3*t*x^2", "3*t^2*x-x^3", "-6*t^2+6*x^2"),
                ],
            },
        ],
    },
}

# Rows split into sub-cases total 45 entries over 39 rows.
N_SUBCASES = sum(len(c["subcases"]) for c in CASES.values())

REGULAR_CASES = ("1", "2", "3", "4", "9", "10", "11", "12", "13", "14d", "16", "17", "19d")


# --- generating families of admissible transformations ----------------------
# Maps are component triples over (t,x,u); inverses are written in the same
# symbols read as target coordinates.  Instantiations bind slot bodies (in
# w) and rational parameters.  Boxes restrict sampling to principal
# branches where inverse formulas need them.

FAMILIES = {
    "T1": {
        "source": ("fhat", "ghat"),
        "target": ("1/fhat", "-ghat/fhat"),
        "slots": {"fhat": "u", "ghat": "u"},
        "map": ("x", "t", "u"),
        "inverse": ("x", "t", "u"),
        "defaults": [
            {"fhat": "w", "ghat": "w^3"},
            {"fhat": "w^2+1", "ghat": "w"},
            {"fhat": "1", "ghat": "w^3+w^2"},
        ],
        "mode": "exact",
    },
    "T2a": {
        "source": ("eps*u^(-4)", "mu*u^(-3)"),
        "target": ("eps*u^(-4)", "mu*u^(-3)"),
        "slots": {"mu": "x"},
        "map": ("1/t", "x", "u/t"),
        "inverse": ("1/t", "x", "u/t"),
        "defaults": [{"eps": 1, "mu": "w"}, {"eps": -1, "mu": "w^2+w"}],
        "chart": {"signs": {"t": "+"}},
        "mode": "exact",
    },
    "T2b": {
        "source": ("eps*u^(-4)", "mu*u^(-3)+u"),
        "target": ("eps*u^(-4)", "mu*u^(-3)"),
        "slots": {"mu": "x"},
        "map": ("1/2*exp(2*t)", "x", "exp(t)*u"),
        "inverse": ("1/2*ln(2*t)", "x", "u*(2*t)^(-1/2)"),
        "defaults": [{"eps": 1, "mu": "w"}, {"eps": -1, "mu": "w^2+w"}],
        "mode": "exact",
    },
    "T2c": {
        "source": ("eps*u^(-4)", "mu*u^(-3)-u"),
        "target": ("eps*u^(-4)", "mu*u^(-3)"),
        "slots": {"mu": "x"},
        "map": ("tan(t)", "x", "u/cos(t)"),
        "inverse": ("arctan(t)", "x", "u*(1+t^2)^(-1/2)"),
        "defaults": [{"eps": 1, "mu": "w"}, {"eps": -1, "mu": "w^2+w"}],
        "chart": {"box": {"t": ("1/10", "7/5")}},
        "mode": "exact",
    },
    "T3": {
        "source": ("1", "g2*exp(-2*x)"),
        "target": ("1", "g2"),
        "slots": {"g2": "u"},
        "map": ("exp(-x)*sinh(t)", "exp(-x)*cosh(t)", "u"),
        "inverse": ("arctanh(t/x)", "-1/2*ln(x^2-t^2)", "u"),
        "defaults": [{"g2": "w^3+w^2"}, {"g2": "w^2+w"}],
        "mode": "exact",
    },
    "T4a": {
        "source": ("1", "g2*x^(-2)"),
        "target": ("1", "g2*x^(-2)"),
        "slots": {"g2": "u"},
        "map": ("t/(x^2-t^2)", "x/(x^2-t^2)", "u"),
        "inverse": ("t/(x^2-t^2)", "x/(x^2-t^2)", "u"),
        "defaults": [{"g2": "w^3+w^2"}, {"g2": "w^4"}],
        "chart": {"box": {"t": ("1/10", "1/2"), "x": ("1", "2")}},
        "mode": "exact",
    },
    "T4b": {
        "source": ("1", "g2*cos(x)^(-2)"),
        "target": ("1", "g2*x^(-2)"),
        "slots": {"g2": "u"},
        "map": (
            "cos(t)/(sin(t)+sin(x))",
            "cos(x)/(sin(t)+sin(x))",
            "u",
        ),
        "inverse": (
            "arctan((1+x^2-t^2)/(2*t))",
            "arctan((1-x^2+t^2)/(2*x))",
            "u",
        ),
        "defaults": [{"g2": "w^3+w^2"}, {"g2": "w^4"}],
        "chart": {"box": {"t": ("1/5", "13/10"), "x": ("1/5", "13/10")}},
        "mode": "exact",
    },
    "T4c": {
        "source": ("1", "-g2*cosh(x)^(-2)"),
        "target": ("1", "g2*x^(-2)"),
        "slots": {"g2": "u"},
        "map": ("exp(t)*sinh(x)", "exp(t)*cosh(x)", "u"),
        "inverse": ("1/2*ln(x^2-t^2)", "arctanh(t/x)", "u"),
        "defaults": [{"g2": "w^3+w^2"}, {"g2": "w^4"}],
        "mode": "exact",
    },
    "T4d": {
        "source": ("1", "g2*sinh(x)^(-2)"),
        "target": ("1", "g2*x^(-2)"),
        "slots": {"g2": "u"},
        "map": ("exp(t)*cosh(x)", "exp(t)*sinh(x)", "u"),
        "inverse": ("1/2*ln(t^2-x^2)", "arctanh(x/t)", "u"),
        "defaults": [{"g2": "w^3+w^2"}, {"g2": "w^4"}],
        "mode": "exact",
    },
    "T5": {
        "source": ("-1", "g2*exp(-2*x)"),
        "target": ("-1", "g2"),
        "slots": {"g2": "u"},
        "map": ("exp(-x)*sin(t)", "exp(-x)*cos(t)", "u"),
        "inverse": ("arctan(t/x)", "-1/2*ln(t^2+x^2)", "u"),
        "defaults": [{"g2": "w^3+w^2"}, {"g2": "w^2+w"}],
        "chart": {"box": {"t": ("1/10", "6/5")}},
        "mode": "exact",
    },
    "T6a": {
        "source": ("-1", "g2*x^(-2)"),
        "target": ("-1", "g2*x^(-2)"),
        "slots": {"g2": "u"},
        "map": ("t/(x^2+t^2)", "x/(x^2+t^2)", "u"),
        "inverse": ("t/(x^2+t^2)", "x/(x^2+t^2)", "u"),
        "defaults": [{"g2": "w^3+w^2"}, {"g2": "w^4"}],
        "mode": "exact",
    },
    "T6b": {
        "source": ("-1", "g2*cos(x)^(-2)"),
        "target": ("-1", "g2*x^(-2)"),
        "slots": {"g2": "u"},
        "map": ("exp(t)*sin(x)", "exp(t)*cos(x)", "u"),
        "inverse": ("1/2*ln(t^2+x^2)", "arctan(t/x)", "u"),
        "defaults": [{"g2": "w^3+w^2"}, {"g2": "w^4"}],
        "chart": {"box": {"x": ("1/10", "6/5")}},
        "mode": "exact",
    },
    "T6c": {
        "source": ("-1", "g2*sinh(x)^(-2)"),
        "target": ("-1", "g2*x^(-2)"),
        "slots": {"g2": "u"},
        "map": (
            "sin(t)/(cos(t)+cosh(x))",
            "sinh(x)/(cos(t)+cosh(x))",
            "u",
        ),
        "inverse": (
            "arctan(2*t/(1-t^2-x^2))",
            "arctanh(2*x/(1+t^2+x^2))",
            "u",
        ),
        "defaults": [{"g2": "w^3+w^2"}, {"g2": "w^4"}],
        "chart": {"box": {"t": ("1/10", "4/5"), "x": ("1/10", "4/5")}},
        "mode": "exact",
    },
    "T7": {
        "source": ("-1", "g2*cosh(x)^(-2)"),
        "target": ("-1", "g2*cosh(x)^(-2)"),
        "slots": {"g2": "u"},
        "map": (
            "arctan((sg*sinh(x)+cg*sin(t))/cos(t))",
            "arctanh((cg*sinh(x)-sg*sin(t))/cosh(x))",
            "u",
        ),
        "inverse": (
            "arctan((-sg*sinh(x)+cg*sin(t))/cos(t))",
            "arctanh((cg*sinh(x)+sg*sin(t))/cosh(x))",
            "u",
        ),
        "defaults": [
            {"g2": "w^3+w^2", "cg": "3/5", "sg": "4/5"},
            {"g2": "w^3+w^2", "cg": "5/13", "sg": "12/13"},
            {"g2": "w^4", "cg": "-3/5", "sg": "4/5"},
        ],
        "chart": {"box": {"t": ("1/10", "9/10"), "x": ("1/10", "9/10")}},
        "mode": "float",
    },
    "T8a": {
        "source": ("1", "g2"),
        "target": ("1", "g2"),
        "slots": {"g2": "u"},
        "map": ("ch*t+sh*x", "sh*t+ch*x", "u"),
        "inverse": ("ch*t-sh*x", "-sh*t+ch*x", "u"),
        "defaults": [
            {"g2": "w^3+w^2", "ch": "5/4", "sh": "3/4"},
            {"g2": "w^4", "ch": "5/3", "sh": "4/3"},
            {"g2": "w^3", "ch": "13/12", "sh": "5/12"},
        ],
        "mode": "exact",
    },
    "T8b": {
        "source": ("-1", "g2"),
        "target": ("-1", "g2"),
        "slots": {"g2": "u"},
        "map": ("c*t-s*x", "s*t+c*x", "u"),
        "inverse": ("c*t+s*x", "-s*t+c*x", "u"),
        "defaults": [
            {"g2": "w^3", "c": "3/5", "s": "4/5"},
            {"g2": "w^3+w^2", "c": "5/13", "s": "12/13"},
            {"g2": "w^4", "c": "-3/5", "s": "4/5"},
        ],
        "mode": "exact",
    },
    # Representative instances of the Liouville-type family: (T, X) solves
    # T_t = X_x, X_t = eps T_x with (T_tt, T_x) != (0, 0), and the u-shift
    # is ln|T_t^2 - eps T_x^2|.
    "T9": {
        "source": ("eps", "epsp*exp(u)"),
        "target": ("eps", "epsp*exp(u)"),
        "slots": {},
        "instances": [
            {
                "eps": 1,
                "epsp": 1,
                "map": ("t*x", "(t^2+x^2)/2", "u - ln(abs(x^2-t^2))"),
                "inverse": (
                    "(x-(x^2-t^2)^(1/2))^(1/2)",
                    "(x+(x^2-t^2)^(1/2))^(1/2)",
                    "u + ln(2*(x^2-t^2)^(1/2))",
                ),
            },
            {
                "eps": -1,
                "epsp": 1,
                "map": ("t*x", "(x^2-t^2)/2", "u - ln(x^2+t^2)"),
                "inverse": (
                    "t*(x+(x^2+t^2)^(1/2))^(-1/2)",
                    "(x+(x^2+t^2)^(1/2))^(1/2)",
                    "u + ln(2*(t^2+x^2)^(1/2))",
                ),
            },
            {
                "eps": -1,
                "epsp": -1,
                "map": ("(t^2-x^2)/2", "t*x", "u - ln(t^2+x^2)"),
                "inverse": (
                    "x*((t^2+x^2)^(1/2)-t)^(-1/2)",
                    "((t^2+x^2)^(1/2)-t)^(1/2)",
                    "u + ln(2*(t^2+x^2)^(1/2))",
                ),
            },
        ],
        "defaults": [{"index": 0}, {"index": 1}, {"index": 2}],
        "chart": {"box": {"t": ("1/10", "9/10"), "x": ("1", "2")}},
        "mode": "exact",
    },
}


# --- additional equivalences between classification cases -------------------
# Each arrow: apply the family map to an instantiated source case and match
# the instantiated target case exactly.  flip_u composes the sign change
# u -> -u before the map.

ADDITIONAL_EQUIVALENCES = [
    {
        "id": "T1:4->4",
        "family": "T1",
        "source": ("4", {"fhat": "w^2+1", "ghat": "w^3"}),
        "target": ("4", {"fhat": "1/(w^2+1)", "ghat": "-w^3/(w^2+1)"}),
    },
    {
        "id": "T1:5a->5a",
        "family": "T1",
        "source": ("5a", {"eps": 1, "ghat": "w^3+w^2"}),
        "target": ("5a", {"eps": 1, "ghat": "-w^3-w^2"}),
    },
    {
        "id": "T1:11->11",
        "family": "T1",
        "source": ("11", {"fhat": "w^2+w"}),
        "target": ("11", {"fhat": "1/(w^2+w)"}),
    },
    # the sign-flip composite lands on epsp~ = +eps*epsp (engine-checked)
    {
        "id": "T1:12->12",
        "family": "T1",
        "source": ("12", {"q": 3, "eps": 1, "epsp": 1}),
        "target": ("12", {"q": -2, "eps": 1, "epsp": 1}),
        "flip_u": True,
    },
    {
        "id": "T1:13->13",
        "family": "T1",
        "source": ("13", {"p": 2, "q": 5, "eps": 1, "epsp": 1}),
        "target": ("13", {"p": -2, "q": 3, "eps": 1, "epsp": -1}),
    },
    {
        "id": "T1:14d->14a",
        "family": "T1",
        "source": ("14d", {"eps": 1, "epsp": 1}),
        "target": ("14a", {"eps": 1, "epsp": -1}),
    },
    {
        "id": "T1:16->16",
        "family": "T1",
        "source": ("16", {"p": 3, "eps": 1}),
        "target": ("16", {"p": -3, "eps": 1}),
    },
    {
        "id": "T1:18a->18a",
        "family": "T1",
        "source": ("18a", {"eps": 1, "q": 3, "epsp": 1}),
        "target": ("18a", {"eps": 1, "q": 3, "epsp": -1}),
    },
    {
        "id": "T1:19d->19a",
        "family": "T1",
        "source": ("19d", {"eps": 1}),
        "target": ("19a", {"eps": 1}),
    },
    {
        "id": "T1:20->20",
        "family": "T1",
        "source": ("20", {"eps": 1, "epsp": 1}),
        "target": ("20", {"eps": 1, "epsp": -1}),
    },
    {
        "id": "T2b:8b->8a",
        "family": "T2b",
        "source": ("8b", {"eps": 1, "mu": "w"}),
        "target": ("8a", {"eps": 1, "mu": "w"}),
    },
    {
        "id": "T2b:14b->14a",
        "family": "T2b",
        "source": ("14b", {"eps": 1, "epsp": 1}),
        "target": ("14a", {"eps": 1, "epsp": 1}),
    },
    {
        "id": "T2b:15b->15a",
        "family": "T2b",
        "source": ("15b", {"eps": 1, "nu": 1}),
        "target": ("15a", {"eps": 1, "nu": 1}),
    },
    {
        "id": "T2b:19b->19a",
        "family": "T2b",
        "source": ("19b", {"eps": 1}),
        "target": ("19a", {"eps": 1}),
    },
    {
        "id": "T2c:8c->8a",
        "family": "T2c",
        "source": ("8c", {"eps": 1, "mu": "w"}),
        "target": ("8a", {"eps": 1, "mu": "w"}),
    },
    {
        "id": "T2c:14c->14a",
        "family": "T2c",
        "source": ("14c", {"eps": 1, "epsp": 1}),
        "target": ("14a", {"eps": 1, "epsp": 1}),
    },
    {
        "id": "T2c:15c->15a",
        "family": "T2c",
        "source": ("15c", {"eps": 1, "nu": 1}),
        "target": ("15a", {"eps": 1, "nu": 1}),
    },
    {
        "id": "T2c:19c->19a",
        "family": "T2c",
        "source": ("19c", {"eps": 1}),
        "target": ("19a", {"eps": 1}),
    },
    {
        "id": "T3:5b->5a",
        "family": "T3",
        "source": ("5b", {"ghat": "w^3+w^2"}),
        "target": ("5a", {"eps": 1, "ghat": "w^3+w^2"}),
    },
    {
        "id": "T3:18b->18a",
        "family": "T3",
        "source": ("18b", {"q": 3, "epsp": 1}),
        "target": ("18a", {"eps": 1, "q": 3, "epsp": 1}),
    },
    {
        "id": "T4b:6b->6a",
        "family": "T4b",
        "source": ("6b", {"ghat": "w^3+w^2"}),
        "target": ("6a", {"eps": 1, "ghat": "w^3+w^2"}),
    },
    {
        "id": "T4c:6c->6a",
        "family": "T4c",
        "source": ("6c", {"ghat": "w^3+w^2"}),
        "target": ("6a", {"eps": 1, "ghat": "w^3+w^2"}),
    },
    {
        "id": "T4d:6d->6a",
        "family": "T4d",
        "source": ("6d", {"ghat": "w^3+w^2"}),
        "target": ("6a", {"eps": 1, "ghat": "w^3+w^2"}),
    },
    {
        "id": "T5:5c->5a",
        "family": "T5",
        "source": ("5c", {"ghat": "w^3+w^2"}),
        "target": ("5a", {"eps": -1, "ghat": "w^3+w^2"}),
    },
    {
        "id": "T5:18c->18a",
        "family": "T5",
        "source": ("18c", {"q": 3, "epsp": 1}),
        "target": ("18a", {"eps": -1, "q": 3, "epsp": 1}),
    },
    {
        "id": "T6b:6e->6a",
        "family": "T6b",
        "source": ("6e", {"ghat": "w^3+w^2"}),
        "target": ("6a", {"eps": -1, "ghat": "w^3+w^2"}),
    },
    {
        "id": "T6c:6f->6a",
        "family": "T6c",
        "source": ("6f", {"ghat": "w^3+w^2"}),
        "target": ("6a", {"eps": -1, "ghat": "w^3+w^2"}),
    },
]


# --- appropriate subalgebras of the essential equivalence algebra -----------
# Generators are sums coeff * generator(kind, param); coefficients and
# parameters may use the entry's rational parameters.  Each entry records
# the matching classification case and the parameter samples under which
# the projection (plus d/dt) must equal the case basis (plus d/dt).

SUBALGEBRAS = [
    {
        "id": "L1dim-1",
        "case": "1",
        "generators": [[("Du", "2", None), ("Dt", "-q", None), ("D", "2", "delta")]],
        "samples": [{"q": 1, "delta": 1, "case_inst": {"p": 1, "delta": 1}},
                    {"q": 2, "delta": 0, "case_inst": {"p": 2, "delta": 0}}],
    },
    {
        "id": "L1dim-2",
        "case": "2",
        "generators": [[("Dt", "1", None), ("D", "-1", "2")]],
        "samples": [{"case_inst": {}}],
    },
    {
        "id": "L1dim-3",
        "case": "3",
        "generators": [[("Dt", "1", None), ("Z", "-1", "2")]],
        "samples": [{"case_inst": {}}],
    },
    {
        "id": "L1dim-4",
        "case": "4",
        "generators": [[("D", "1", "1")]],
        "samples": [{"case_inst": {}}],
    },
    {
        "id": "L2dim-9",
        "case": "9",
        "generators": [
            [("Du", "1", None), ("D", "-1", "p")],
            [("Dt", "1", None), ("D", "-1", "2")],
        ],
        "samples": [{"p": 1, "case_inst": {"p": 1}}, {"p": 3, "case_inst": {"p": 3}}],
    },
    {
        "id": "L2dim-10",
        "case": "10",
        "generators": [
            [("Du", "1", None), ("D", "-2", "x")],
            [("Dt", "1", None), ("Z", "-1", "2")],
        ],
        "samples": [{"case_inst": {}}],
    },
    {
        "id": "L2dim-11",
        "case": "11",
        "generators": [
            [("Du", "-1", None), ("Dt", "2", None), ("D", "2", "x")],
            [("D", "1", "1")],
        ],
        "samples": [{"case_inst": {}}],
    },
    {
        "id": "L2dim-12",
        "case": "12",
        "generators": [
            [("Du", "1-q", None), ("Dt", "2*q", None), ("D", "-2*(1-q)", "x"), ("Z", "-1", "4")],
            [("D", "1", "1")],
        ],
        "samples": [{"q": 2, "case_inst": {"q": 2}}, {"q": 3, "case_inst": {"q": 3}}],
    },
    {
        "id": "L2dim-13",
        "case": "13",
        "generators": [
            [("Du", "3-p+q", None), ("Dt", "2*(1-q)", None), ("D", "2*(1+p-q)", "x")],
            [("D", "1", "1")],
        ],
        "samples": [{"p": 2, "q": 3, "case_inst": {"p": 2, "q": 3}}],
    },
    {
        "id": "L3dim-16",
        "case": "16",
        "generators": [
            [("Du", "p-4", None), ("D", "-2*p", "x")],
            [("Dt", "p-4", None), ("D", "-4", "x")],
            [("D", "1", "1")],
        ],
        "samples": [{"p": 1, "case_inst": {"p": 1}}, {"p": 3, "case_inst": {"p": 3}}],
    },
    {
        "id": "L3dim-17",
        "case": "17",
        "generators": [
            [("Du", "1", None), ("D", "-2", "x"), ("Z", "-1", "4")],
            [("Dt", "1", None), ("Z", "-1", "2")],
            [("D", "1", "1")],
        ],
        "samples": [{"case_inst": {}}],
    },
    {
        "id": "Winv-14d",
        "case": "14d",
        "generators": [
            [("D", "1", "1")],
            [("D", "1", "x")],
            [("D", "1", "x^2")],
        ],
        "samples": [{"case_inst": {}}],
    },
    {
        "id": "Winv-19d",
        "case": "19d",
        "generators": [
            [("D", "1", "1")],
            [("D", "1", "x")],
            [("D", "1", "x^2")],
            [("Du", "1", None), ("Dt", "-2", None)],
        ],
        "samples": [{"case_inst": {}}],
    },
]

# negative controls for the intersection constraints
FORBIDDEN_SUBALGEBRAS = [
    {"id": "neg-Dt", "generators": [[("Dt", "1", None)]]},
    {"id": "neg-Du+Z", "generators": [[("Du", "1", None), ("Z", "1", "x^2")]]},
]


# --- special subclass u_tt = eps u^-4 u_xx + mu(x) u^-3 + sigma u -----------

SPECIAL_KERNELS = {
    0: [("1", "0", "0"), ("2*t", "0", "u"), ("t^2", "0", "t*u")],
    1: [
        ("1", "0", "0"),
        ("exp(2*t)", "0", "u*exp(2*t)"),
        ("exp(-2*t)", "0", "-u*exp(-2*t)"),
    ],
    -1: [
        ("1", "0", "0"),
        ("cos(2*t)", "0", "-u*sin(2*t)"),
        ("sin(2*t)", "0", "u*cos(2*t)"),
    ],
}

SPECIAL_MU_SAMPLES = ["w", "w^2+w", "w^3+1"]

# normalized subclass (sigma = 0): group action with Moebius time maps;
# mu transforms as mu -> b1^-2 mu
SPECIAL_NORMALIZED_SAMPLES = [
    {"a": (0, 1, 1, 1), "b": (0, 2)},   # T = t/(t+1), x~ = 2x
    {"a": (1, 3, 1, 2), "b": (1, 1)},   # T = (3t+1)/(2t+1), x~ = x+1
]
