#![no_main]

use libfuzzer_sys::fuzz_target;

use gkz_dwork::finite_field::FqParams;

const PRIMES: [u64; 4] = [3, 5, 7, 11];

// Byte 0 picks p, byte 1 the degree, the rest are little-endian u16 coordinates.
fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let p = PRIMES[data[0] as usize % PRIMES.len()];
    let degree = 1 + data[1] as usize % 4;
    let Ok(field) = FqParams::new(p, degree) else {
        return;
    };
    let coords: Vec<u64> = data[2..]
        .chunks(2)
        .map(|c| c.iter().rev().fold(0u64, |acc, &b| acc << 8 | b as u64))
        .collect();
    let Ok(x) = field.element(coords.clone()) else {
        assert!(coords.len() != degree || coords.iter().any(|&c| c >= p));
        return;
    };
    assert_eq!(field.element(x.coeffs().to_vec()).as_ref(), Ok(&x));
    let order = field.order().expect("small field");
    assert_eq!(field.pow(&x, order), x);
    if let Ok(inv) = field.inv(&x) {
        assert_eq!(field.mul(&x, &inv), field.one());
    } else {
        assert!(x.is_zero());
    }
    assert_eq!(field.frobenius(&x, degree), x);
});
