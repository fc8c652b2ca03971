use crate::hypergraph::MultilinearForm;
use crate::rational;

/// Floating-point copy of a sparse multilinear form, laid out for repeated
/// contraction: entry `e` has indices `idx[e*t..(e+1)*t]` and value `val[e]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealForm {
    t: usize,
    n: usize,
    idx: Vec<u32>,
    val: Vec<f64>,
}

impl RealForm {
    pub fn new(t: usize, n: usize) -> Self {
        RealForm {
            t,
            n,
            idx: Vec::new(),
            val: Vec::new(),
        }
    }

    pub fn from_form(form: &MultilinearForm) -> Self {
        let mut out = RealForm::new(form.t(), form.n());
        for (k, v) in form.entries() {
            out.push(k, rational::to_f64(v));
        }
        out
    }

    /// Appends an entry; duplicate indices simply add up under evaluation.
    pub fn push(&mut self, idx: &[u32], value: f64) {
        debug_assert_eq!(idx.len(), self.t);
        if value != 0.0 {
            self.idx.extend_from_slice(idx);
            self.val.push(value);
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.val.len()
    }

    pub fn is_zero(&self) -> bool {
        self.val.iter().all(|&v| v == 0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.idx.chunks_exact(self.t).zip(self.val.iter().copied())
    }

    pub fn scaled(&self, c: f64) -> RealForm {
        RealForm {
            t: self.t,
            n: self.n,
            idx: self.idx.clone(),
            val: self.val.iter().map(|v| v * c).collect(),
        }
    }

    /// `Σ c_i A_i` with entries merged by index.
    pub fn combine(forms: &[&RealForm], coeffs: &[f64]) -> RealForm {
        let (t, n) = (forms[0].t, forms[0].n);
        let mut merged = std::collections::BTreeMap::<&[u32], f64>::new();
        for (f, &c) in forms.iter().zip(coeffs) {
            debug_assert_eq!((f.t, f.n), (t, n));
            for (k, v) in f.entries() {
                *merged.entry(k).or_insert(0.0) += c * v;
            }
        }
        let mut out = RealForm::new(t, n);
        for (k, v) in merged {
            out.push(k, v);
        }
        out
    }

    pub fn evaluate(&self, xs: &[&[f64]]) -> f64 {
        debug_assert_eq!(xs.len(), self.t);
        self.entries()
            .map(|(k, v)| {
                let mut term = v;
                for (x, &i) in xs.iter().zip(k) {
                    term *= x[i as usize];
                }
                term
            })
            .sum()
    }

    /// The slot-`s` partial contraction: `out[i] = A(x[1],…,e_i,…,x[t])`.
    pub fn gradient(&self, s: usize, xs: &[&[f64]], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (k, v) in self.entries() {
            let mut term = v;
            for (r, (x, &i)) in xs.iter().zip(k).enumerate() {
                if r != s {
                    term *= x[i as usize];
                }
            }
            out[k[s] as usize] += term;
        }
    }

    /// Largest absolute entry after merging duplicate indices.
    pub fn max_abs_entry(&self) -> Option<(Vec<u32>, f64)> {
        let merged = RealForm::combine(&[self], &[1.0]);
        merged
            .entries()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()).then_with(|| b.0.cmp(a.0)))
            .map(|(k, v)| (k.to_vec(), v))
    }
}
