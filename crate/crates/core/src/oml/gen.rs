//! Generators for standard finite orthomodular lattices.

use super::{El, FiniteOml, OrthoPoset};

fn letter(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

impl FiniteOml {
    /// The Boolean algebra `2^n` of subsets of `n` atoms. Subsets are named
    /// by their atoms (`ab`), with `0` and `1` for the bounds.
    pub fn boolean(n: usize) -> FiniteOml {
        assert!(n <= 12, "2^{n} elements is beyond exhaustive reach");
        let size = 1usize << n;
        let full = size - 1;
        let name = |s: usize| match s {
            0 => "0".to_string(),
            s if s == full => "1".to_string(),
            s => (0..n).filter(|i| s >> i & 1 == 1).map(letter).collect(),
        };
        let names: Vec<String> = (0..size).map(name).collect();
        let mut relations = Vec::new();
        for s in 0..size {
            for i in 0..n {
                if s >> i & 1 == 0 {
                    relations.push((s, s | 1 << i));
                }
            }
        }
        let ortho = (0..size).map(|s| Some(full & !s)).collect();
        let poset = OrthoPoset::new(names, &relations, ortho, Some(0), Some(full)).expect("distinct names");
        FiniteOml::new(poset).expect("boolean algebras are orthomodular")
    }

    /// `MO_n`: bounds plus `n` pairs of atoms `x`, `x'`, all incomparable.
    pub fn mo(n: usize) -> FiniteOml {
        let mut names = vec!["0".to_string()];
        for i in 0..n {
            names.push(letter(i));
            names.push(format!("{}'", letter(i)));
        }
        names.push("1".to_string());
        let top: El = names.len() - 1;
        let mut relations = Vec::new();
        let mut ortho = vec![Some(top)];
        for i in 0..n {
            let (a, b) = (1 + 2 * i, 2 + 2 * i);
            relations.extend([(0, a), (0, b), (a, top), (b, top)]);
            ortho.push(Some(b));
            ortho.push(Some(a));
        }
        ortho.push(Some(0));
        if n == 0 {
            relations.push((0, top));
        }
        let poset = OrthoPoset::new(names, &relations, ortho, Some(0), Some(top)).expect("distinct names");
        FiniteOml::new(poset).expect("MO_n is orthomodular")
    }
}
