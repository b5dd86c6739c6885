import json

import numpy as np
import pytest

from opspectra import DimensionError, autocov_from_povm, sample_gaussian_measure, synthesize_process
from opspectra.serialization import (
    decode_autocov,
    decode_fir,
    decode_operator,
    decode_povm,
    decode_series,
    decode_transfer,
    encode_autocov,
    encode_fir,
    encode_operator,
    encode_povm,
    encode_series,
    encode_transfer,
    read_json,
    write_json,
)
from opspectra.synthetic import (
    make_rng,
    random_complex,
    random_fir,
    random_povm,
    random_transfer,
)


def roundtrip(obj):
    return json.loads(json.dumps(obj))


class TestOperatorFormat:
    def test_layout(self):
        op = np.array([[1 + 2j, 3.5], [0, -1j]])
        enc = encode_operator(op)
        assert enc["rows"] == 2 and enc["cols"] == 2
        assert enc["entries"][0] == [1.0, 2.0]
        assert enc["entries"][1] == [3.5, 0.0]

    def test_exact_roundtrip(self):
        rng = make_rng(701)
        op = random_complex(rng, (3, 5))
        np.testing.assert_array_equal(decode_operator(roundtrip(encode_operator(op))), op)

    def test_entry_count_mismatch(self):
        with pytest.raises(DimensionError):
            decode_operator({"rows": 2, "cols": 2, "entries": [[1.0, 0.0]]})


class TestPovmFormat:
    def test_exact_roundtrip(self):
        rng = make_rng(702)
        nu = random_povm(rng, 3, 5)
        back = decode_povm(roundtrip(encode_povm(nu)))
        np.testing.assert_array_equal(back.freqs, nu.freqs)
        np.testing.assert_array_equal(back.weights, nu.weights)


class TestAutocovFormat:
    def test_exact_roundtrip(self):
        rng = make_rng(703)
        gamma = autocov_from_povm(random_povm(rng, 3, 4), 5)
        back = decode_autocov(roundtrip(encode_autocov(gamma)))
        assert back.max_lag == 5
        np.testing.assert_array_equal(back.values, gamma.values)


class TestTransferFormat:
    def test_exact_roundtrip_total(self):
        rng = make_rng(704)
        phi = random_transfer(rng, 3, 2, np.linspace(-2, 2, 4))
        back = decode_transfer(roundtrip(encode_transfer(phi)))
        np.testing.assert_array_equal(back.ops, phi.ops)
        assert back.domains is None

    def test_exact_roundtrip_with_domains(self):
        rng = make_rng(705)
        freqs = np.linspace(-2, 2, 3)
        from opspectra import TransferFunction

        doms = np.stack([np.eye(3, dtype=complex)] * 3)
        phi = TransferFunction(3, 2, freqs, random_complex(rng, (3, 2, 3)), doms)
        back = decode_transfer(roundtrip(encode_transfer(phi)))
        np.testing.assert_array_equal(back.domains, phi.domains)


class TestFirFormat:
    def test_exact_roundtrip(self):
        rng = make_rng(706)
        fir = random_fir(rng, 3, 2, 4)
        back = decode_fir(roundtrip(encode_fir(fir)))
        assert set(back.taps) == set(fir.taps)
        for s in fir.taps:
            np.testing.assert_array_equal(back.taps[s], fir.taps[s])


class TestSeriesFormat:
    def test_exact_roundtrip(self):
        rng = make_rng(707)
        nu = random_povm(rng, 2, 3)
        x = synthesize_process(sample_gaussian_measure(nu, 4, seed=60), 6)
        back = decode_series(roundtrip(encode_series(x)))
        assert back.period == 6 and back.n_realizations == 4
        np.testing.assert_array_equal(back.values, x.values)


class TestFiles:
    def test_write_read_exact(self, tmp_path):
        rng = make_rng(708)
        nu = random_povm(rng, 3, 4)
        path = tmp_path / "povm.json"
        write_json(encode_povm(nu), path)
        back = decode_povm(read_json(path))
        np.testing.assert_array_equal(back.weights, nu.weights)

    def test_deterministic_bytes(self, tmp_path):
        rng = make_rng(709)
        nu = random_povm(rng, 3, 4)
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        write_json(encode_povm(nu), a)
        write_json(encode_povm(nu), b)
        assert a.read_bytes() == b.read_bytes()
