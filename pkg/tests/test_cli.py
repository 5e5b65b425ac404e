import pytest

from epik.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    fields = dict(line.split("=", 1) for line in out.out.splitlines() if "=" in line)
    return code, fields, out.err


@pytest.fixture
def keys(tmp_path, capsys):
    pk, sk = tmp_path / "pk", tmp_path / "sk"
    code, out, _ = run(capsys, "keygen", "--preset", "iot", "--out-pk", pk, "--out-sk", sk,
                       "--seed", 5, "--test-mode")
    assert code == 0
    return pk, sk, out


def test_keygen_reports_size(keys):
    assert keys[2]["pk_bits"] == "1152" and keys[2]["digits"] == "4"


def test_kem_roundtrip(keys, tmp_path, capsys):
    pk, sk, _ = keys
    ct, k1, k2 = tmp_path / "ct", tmp_path / "k1", tmp_path / "k2"
    assert run(capsys, "encap", "--pk", pk, "--out-ct", ct, "--out-key", k1)[0] == 0
    assert run(capsys, "decap", "--sk", sk, "--ct", ct, "--out-key", k2)[0] == 0
    assert k1.read_bytes() == k2.read_bytes() and len(k1.read_bytes()) == 32


def test_pke_roundtrip_hex(keys, tmp_path, capsys):
    pk, sk, _ = keys
    msg, ct, back = tmp_path / "m", tmp_path / "ct", tmp_path / "back"
    msg.write_bytes(bytes(range(256)) * 2)
    assert run(capsys, "encap", "--pk", pk, "--out-ct", ct, "--message", msg, "--format", "hex")[0] == 0
    assert run(capsys, "decap", "--sk", sk, "--ct", ct, "--out-message", back)[0] == 0
    assert back.read_bytes() == msg.read_bytes()


def test_seed_needs_test_mode(tmp_path, capsys):
    code, _, err = run(capsys, "keygen", "--out-pk", tmp_path / "a", "--out-sk", tmp_path / "b",
                       "--seed", 1)
    assert code == 0 and "ignored" in err


def test_unknown_preset(tmp_path, capsys):
    assert run(capsys, "keygen", "--preset", "nope", "--out-pk", tmp_path / "a",
               "--out-sk", tmp_path / "b")[0] == 3


def test_no_command(capsys):
    assert run(capsys)[0] == 3


def test_missing_file(tmp_path, capsys):
    assert run(capsys, "decap", "--sk", tmp_path / "none", "--ct", tmp_path / "none")[0] == 2


def test_truncated_ct(keys, tmp_path, capsys):
    pk, sk, _ = keys
    ct = tmp_path / "ct"
    run(capsys, "encap", "--pk", pk, "--out-ct", ct)
    ct.write_bytes(ct.read_bytes()[:-5])
    assert run(capsys, "decap", "--sk", sk, "--ct", ct, "--out-key", tmp_path / "k")[0] == 4


def test_engel_encode_one(capsys):
    code, out, _ = run(capsys, "engel", "encode", "--value", "1")
    assert code == 0
    assert (out["digits"], out["terminated"], out["residual_valuation.0"]) == ("1", "true", "inf")


def test_engel_roundtrip(tmp_path, capsys):
    code, out, _ = run(capsys, "engel", "encode", "--value", "1,1,1/3", "--prime", 5,
                       "--window", 4, "--precision", 10)
    listing = tmp_path / "digits.txt"
    listing.write_text("".join(f"{k}={v}\n" for k, v in out.items()))
    code, back, _ = run(capsys, "engel", "decode", "--input", listing, "--prime", 5,
                        "--window", 4, "--precision", 10)
    assert code == 0 and back["digits"] == out["digits"]


def test_engel_bad_action(capsys):
    assert run(capsys, "engel", "squash", "--value", "1")[0] == 3


def test_engel_bad_hex(capsys):
    assert run(capsys, "engel", "encode", "--input", "zz")[0] == 4


def test_bench(tmp_path, capsys):
    csv = tmp_path / "t.csv"
    code, out, _ = run(capsys, "bench", "--sizes", "16,64,256,1024", "--csv", csv,
                       "--latency-ms", 90)
    assert code == 0 and csv.read_text().startswith("size_bytes")
    assert float(out["chain.1024"].split("compute_share:")[1]) < 0.2


def test_bench_too_few_trials(capsys):
    assert run(capsys, "bench", "--trials", 3)[0] == 3
