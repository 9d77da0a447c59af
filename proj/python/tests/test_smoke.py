import pathlib

import pytest

import transfinite as tf

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "corpus"


def test_ordinal_arithmetic():
    w = tf.omega
    assert str(w * 2 + 3) == "w*2+3"
    assert 1 + w == w
    assert w + 1 > w
    assert tf.Ordinal("w^2") == w**2
    assert tf.sub_left(w, w * 2) == w
    assert tf.unpair(tf.pair(3, w)) == (tf.Ordinal(3), w)
    assert tf.Ordinal("w*2+5").finite_part() == 5
    with pytest.raises(ValueError):
        tf.sub_left(w, 1)


def test_run_register_families():
    src = (CORPUS / "inc_loop.tfm").read_text()
    weak = tf.run("witrm", src)
    assert weak["outcome"] == "undefined"
    assert weak["time"] == tf.omega and weak["register"] == 0
    strong = tf.run("itrm", src)
    assert strong["outcome"] == "diverges"
    assert strong["recurring"] == "line 0 R0=0"

    r = tf.run("itrm", (CORPUS / "omega_squared.tfm").read_text(), max_time="w^3")
    assert r["outcome"] == "halted"
    assert str(r["time"]) == "w^2+2"
    assert r["output"] == 0


def test_run_turing_and_budget():
    prog = tf.Program((CORPUS / "right_writer.tfm").read_text())
    assert prog.dialect == "turing"
    r = tf.run("ittm", prog)
    assert r["outcome"] == "halted" and str(r["time"]) == "w+1"
    b = tf.run("otm", prog, max_time="w^3", max_events=300)
    assert b["outcome"] == "budget"


def test_errors():
    with pytest.raises(tf.DialectMismatch):
        tf.run("ittm", "INC R0\n")
    with pytest.raises(tf.ProgramError):
        tf.Program("FROB R0\n")
    with pytest.raises(tf.OrdinalParseError):
        tf.run("itrm", "HALT\n", max_time="w++")
    with pytest.raises(ValueError):
        tf.run("bogus", "HALT\n")


def test_enumeration_and_census():
    p = tf.enumerate_program(5)
    assert p.index == 5
    rows = tf.census("itrm", 20).splitlines()
    assert len(rows) == 20
    assert rows == tf.census("itrm", 20).splitlines()
    assert rows[0].split("\t")[0] == "0"


def test_sample_first_bit():
    prog = "registers: 3\nL: ORACLE(R0, R1)\nJEQ R1 R2 L\nHALT\n"
    rep = tf.sample("itrm", prog, seed=42, trials=1000)
    assert rep["matched"] == 473
    assert rep["trials"] == 1000
