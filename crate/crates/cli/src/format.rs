// SPDX-License-Identifier: Apache-2.0

use cliffsim::BitString;

/// `0`, `1`, `2^-k` when `p` is an exact power of two, otherwise the
/// shortest decimal that reads back as `p`.
pub fn format_float(p: f64) -> String {
    if p == 0.0 {
        return "0".into();
    }
    if p == 1.0 {
        return "1".into();
    }
    let k = -p.log2().round();
    if k > 0.0 && k <= 1074.0 && 2f64.powi(-(k as i32)) == p {
        return format!("2^-{k}");
    }
    format!("{p}")
}

/// All `m`-bit strings in lexicographic order of their printed form.
pub fn output_strings(m: usize) -> impl Iterator<Item = BitString> {
    (0..1u64 << m).map(move |i| {
        let bits: Vec<bool> = (0..m).map(|k| i >> (m - 1 - k) & 1 == 1).collect();
        BitString::from_bools(&bits)
    })
}
