#![no_main]

use std::f64::consts::TAU;

use libfuzzer_sys::fuzz_target;
use sppn::oracle::inner_product;
use sppn::{Complex64, PiecewiseExpField, Segment};

/// Raw mode: 40-byte records of little-endian `end, gradient, offset, re, im`,
/// each segment starting where the previous one ended.
fn raw_segments(data: &[u8]) -> Vec<Segment> {
    let mut start = 0.0;
    data.chunks_exact(40)
        .map(|rec| {
            let f = |i: usize| f64::from_le_bytes(rec[8 * i..8 * i + 8].try_into().unwrap());
            let s = Segment::new(start, f(0), f(1), f(2), Complex64::new(f(3), f(4)));
            start = s.end;
            s
        })
        .collect()
}

/// Structured mode: 4-byte records of width weight, gradient, offset and
/// amplitude, scaled so the partition always covers the circle.
fn structured_segments(data: &[u8]) -> Vec<Segment> {
    let records: Vec<&[u8]> = data.chunks_exact(4).take(64).collect();
    let total: f64 = records.iter().map(|r| f64::from(r[0])).sum();
    if total == 0.0 {
        return Vec::new();
    }
    let mut start = 0.0;
    let mut acc = 0.0;
    records
        .iter()
        .map(|r| {
            acc += f64::from(r[0]);
            let end = TAU * acc / total;
            let gradient = f64::from(r[1] as i8) / 4.0;
            let offset = f64::from(r[2]) * TAU / 256.0;
            let amplitude = Complex64::new(f64::from(r[3]) / 255.0, 0.0);
            let s = Segment::new(start, end, gradient, offset, amplitude);
            start = end;
            s
        })
        .collect()
}

fuzz_target!(|data: &[u8]| {
    let Some((&mode, rest)) = data.split_first() else {
        return;
    };
    let structured = mode % 2 == 0;
    let segments = if structured {
        structured_segments(rest)
    } else {
        raw_segments(rest)
    };
    let Ok(field) = PiecewiseExpField::new(segments) else {
        return;
    };
    let norm = inner_product(&field, &field);
    if structured {
        // amplitudes are in [0, 1], so the mean-square norm is too
        assert!(norm.re > -1e-12 && norm.re < 1.0 + 1e-9, "{norm}");
        assert!(norm.im.abs() < 1e-9, "{norm}");
        let rotated = field.rotate(sppn::Angle::new(f64::from(mode) / 7.0));
        let cross = inner_product(&field, &rotated);
        assert!(cross.norm() <= norm.re + 1e-9, "{cross} vs {norm}");
    }
});
