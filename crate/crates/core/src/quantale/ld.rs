use std::sync::Arc;

use rand::Rng;
use serde_json::Value;

use super::table::{check_table, named_table, rows_of};
use super::{
    Carrier, GirardQuantale, LinearQuantale, Quantale, QuantaleError, TableQuantale, ZInf,
    ZInfQuantale,
};

/// A finite lattice with two multiplication tables: `(⊗, ⊤)` and `(⊕, ⊥)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableLd {
    tensor: TableQuantale,
    par: Vec<usize>,
    par_unit: usize,
}

impl TableLd {
    pub fn new(tensor: TableQuantale, par: Vec<usize>, par_unit: usize) -> Result<Self, QuantaleError> {
        check_table(tensor.lattice(), &par, "par")?;
        if par_unit >= tensor.len() {
            return Err(QuantaleError::UnknownElement(par_unit.to_string()));
        }
        Ok(TableLd {
            tensor,
            par,
            par_unit,
        })
    }

    pub fn from_fn<F>(tensor: TableQuantale, par_unit: usize, op: F) -> Self
    where
        F: Fn(usize, usize) -> usize,
    {
        let n = tensor.len();
        let par = (0..n * n).map(|i| op(i / n, i % n)).collect();
        Self::new(tensor, par, par_unit).expect("operation stays inside the carrier")
    }

    pub fn from_named(
        tensor: TableQuantale,
        rows: &[Vec<String>],
        par_unit: &str,
    ) -> Result<Self, QuantaleError> {
        let par = named_table(tensor.lattice(), rows)?;
        let par_unit = tensor.elem(par_unit)?;
        Self::new(tensor, par, par_unit)
    }

    pub fn tensor_part(&self) -> &TableQuantale {
        &self.tensor
    }

    pub fn par_table(&self) -> &[usize] {
        &self.par
    }

    pub fn named_par_rows(&self) -> Vec<Vec<String>> {
        rows_of(self.tensor.lattice(), &self.par)
    }

    /// A copy with one entry of the par table replaced.
    pub fn with_par_entry(&self, a: usize, b: usize, value: usize) -> Self {
        let mut out = self.clone();
        let n = self.tensor.len();
        out.par[a * n + b] = value;
        out
    }

    /// A copy with one entry of the tensor table replaced.
    pub fn with_tensor_entry(&self, a: usize, b: usize, value: usize) -> Self {
        let mut out = self.clone();
        out.tensor = self.tensor.with_entry(a, b, value);
        out
    }

    /// Reverses the order and exchanges `(⊗, ⊤)` with `(⊕, ⊥)`.
    pub fn opposite(&self) -> TableLd {
        let lattice = Arc::new(self.tensor.lattice().opposite());
        let tensor = TableQuantale::new(lattice, self.par.clone(), self.par_unit)
            .expect("same shape");
        TableLd {
            tensor,
            par: self.tensor.table().to_vec(),
            par_unit: self.tensor.unit(),
        }
    }
}

impl GirardQuantale<TableQuantale> {
    /// Materializes the derived par as a table.
    pub fn to_ld(&self) -> TableLd {
        TableLd::from_fn(self.base().clone(), self.dualizer(), |a, b| self.girard_par(a, b))
    }
}

impl Carrier for TableLd {
    type Elem = usize;
    fn leq(&self, a: usize, b: usize) -> bool {
        self.tensor.leq(a, b)
    }
    fn join(&self, a: usize, b: usize) -> usize {
        self.tensor.join(a, b)
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        self.tensor.meet(a, b)
    }
    fn bottom(&self) -> usize {
        self.tensor.bottom()
    }
    fn top(&self) -> usize {
        self.tensor.top()
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn domain(&self, window: i64) -> Vec<usize> {
        self.tensor.domain(window)
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, window: i64) -> usize {
        self.tensor.random_elem(rng, window)
    }
    fn shrink_elem(&self, a: usize) -> Vec<usize> {
        self.tensor.shrink_elem(a)
    }
    fn render(&self, a: usize) -> String {
        self.tensor.render(a)
    }
    fn encode(&self, a: usize) -> Value {
        self.tensor.encode(a)
    }
    fn decode(&self, v: &Value) -> Result<usize, QuantaleError> {
        self.tensor.decode(v)
    }
}

impl Quantale for TableLd {
    fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor.tensor(a, b)
    }
    fn unit(&self) -> usize {
        self.tensor.unit()
    }
}

impl LinearQuantale for TableLd {
    #[inline]
    fn par(&self, a: usize, b: usize) -> usize {
        self.par[a * self.tensor.len() + b]
    }
    fn par_unit(&self) -> usize {
        self.par_unit
    }
}

/// The extended integers with `a ⊕ b = a + b - par_shift`; mixed infinities
/// in the par resolve to `par_mixed` (lawfully the lattice top).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZInfLd {
    tensor: ZInfQuantale,
    par_shift: i64,
    par_mixed: ZInf,
}

impl ZInfLd {
    pub fn new(tensor: ZInfQuantale, par_shift: i64) -> Self {
        ZInfLd {
            tensor,
            par_shift,
            par_mixed: tensor.flavor().top(),
        }
    }

    /// A copy whose par resolves mixed infinities to `mixed`.
    pub fn with_par_mixed(mut self, mixed: ZInf) -> Self {
        self.par_mixed = mixed;
        self
    }

    pub fn tensor_part(&self) -> &ZInfQuantale {
        &self.tensor
    }

    pub fn par_shift(&self) -> i64 {
        self.par_shift
    }

    pub fn par_mixed(&self) -> ZInf {
        self.par_mixed
    }

    pub fn opposite(&self) -> ZInfLd {
        ZInfLd {
            tensor: ZInfQuantale::new(self.tensor.flavor().flip())
                .with_shift(self.par_shift)
                .with_mixed(self.par_mixed),
            par_shift: self.tensor.shift(),
            par_mixed: self.tensor.mixed(),
        }
    }
}

impl GirardQuantale<ZInfQuantale> {
    /// With dualizer `d` the derived par is `a + b - d`, top-absorbing.
    pub fn to_ld(&self) -> ZInfLd {
        match self.dualizer() {
            ZInf::Fin(d) => ZInfLd::new(*self.base(), d),
            _ => unreachable!("an infinite element is never cyclic dualizing"),
        }
    }
}

impl Carrier for ZInfLd {
    type Elem = ZInf;
    fn leq(&self, a: ZInf, b: ZInf) -> bool {
        self.tensor.leq(a, b)
    }
    fn join(&self, a: ZInf, b: ZInf) -> ZInf {
        self.tensor.join(a, b)
    }
    fn meet(&self, a: ZInf, b: ZInf) -> ZInf {
        self.tensor.meet(a, b)
    }
    fn bottom(&self) -> ZInf {
        self.tensor.bottom()
    }
    fn top(&self) -> ZInf {
        self.tensor.top()
    }
    fn is_finite(&self) -> bool {
        false
    }
    fn domain(&self, window: i64) -> Vec<ZInf> {
        self.tensor.domain(window)
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, window: i64) -> ZInf {
        self.tensor.random_elem(rng, window)
    }
    fn shrink_elem(&self, a: ZInf) -> Vec<ZInf> {
        self.tensor.shrink_elem(a)
    }
    fn render(&self, a: ZInf) -> String {
        self.tensor.render(a)
    }
    fn encode(&self, a: ZInf) -> Value {
        self.tensor.encode(a)
    }
    fn decode(&self, v: &Value) -> Result<ZInf, QuantaleError> {
        self.tensor.decode(v)
    }
}

impl Quantale for ZInfLd {
    fn tensor(&self, a: ZInf, b: ZInf) -> ZInf {
        self.tensor.tensor(a, b)
    }
    fn unit(&self) -> ZInf {
        self.tensor.unit()
    }
    fn residual_right(&self, a: ZInf, b: ZInf) -> ZInf {
        self.tensor.residual_right(a, b)
    }
    fn residual_left(&self, b: ZInf, a: ZInf) -> ZInf {
        self.tensor.residual_left(b, a)
    }
}

impl LinearQuantale for ZInfLd {
    fn par(&self, a: ZInf, b: ZInf) -> ZInf {
        a.shifted_add(b, self.par_shift, self.par_mixed)
    }
    fn par_unit(&self) -> ZInf {
        ZInf::Fin(self.par_shift)
    }
}
