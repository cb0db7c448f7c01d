import json

import pytest

import ordertop

DIAMOND = "elem 0\nelem a\nelem b\nelem 1\ncover 0 a\ncover 0 b\ncover a 1\ncover b 1\n"


def test_parse_and_query():
    p = ordertop.Poset.parse(DIAMOND)
    assert len(p) == 4
    assert p.labels == ["0", "a", "b", "1"]
    assert p.leq("0", "1")
    assert not p.leq("a", "b")
    assert p.is_lattice()
    assert ordertop.Poset.parse(p.to_text()).covers() == p.covers()
    assert '"0" -> "a";' in p.to_dot()


def test_parse_error_names_line():
    with pytest.raises(ordertop.OrdertopError, match="line 3"):
        ordertop.Poset.parse("elem a\nelem b\ncover a c\n")


def test_completion_of_antichain():
    p = ordertop.Poset.from_covers(["a", "b"], [])
    c = ordertop.complete(p)
    assert sorted(map(sorted, c["cuts"])) == [[], ["a"], ["a", "b"], ["b"]]
    assert c["lattice"].is_lattice()
    assert ordertop.verify_dm(p)["all_pass"]


def test_lattice_completion_is_isomorphic_size():
    p = ordertop.Poset.parse(DIAMOND)
    assert len(ordertop.complete(p)["cuts"]) == 4


def test_convergence_modes():
    p = ordertop.Poset.parse(DIAMOND)
    for mode in ("o1", "o2", "o3", "odm"):
        assert ordertop.converges(p, "prefix: b ; cycle: a", "a", mode)
    assert not ordertop.converges(p, "cycle: a b", "0", "o3")
    with pytest.raises(ValueError):
        ordertop.converges(p, "cycle: a", "a", "o9")


def test_random_poset_deterministic():
    a = ordertop.random_poset(8, 0.3, 5)
    b = ordertop.random_poset(8, 0.3, 5)
    assert a.to_text() == b.to_text()


def test_gallery():
    certs = ordertop.wolk_certificates(3)
    assert [c["status"] for c in certs] == ["pass", "pass"]
    certs = ordertop.olejcek_certificates(4, 2)
    assert all(c["status"] == "pass" for c in certs)


def test_measure():
    f = ordertop.StepFunction.parse("1;1,3")
    assert f.integral() == "2"
    assert (f + f).to_text() == "1;2,6"
    assert ordertop.pairing(f, ordertop.StepFunction.parse("0;1")) == "2"
    w = ordertop.t5_escape(["0;1"])
    assert (w["m"], w["n"], w["gamma"]) == (2, 2, "3/4")
    sep = ordertop.sigma_pq_separation(1, 2, "3/2", 50)
    assert sep["status"] == "pass"
    assert sep["evidence"]["first_index"] == 6


def test_cli_passthrough():
    code, out, err = ordertop.run_cli(["gallery", "wolk", "--n", "2", "--check"])
    assert code == 0, err
    assert json.loads(out)["certificates"][0]["status"] == "pass"
    code, _, _ = ordertop.run_cli(["complete", "--bogus"])
    assert code == 2
