use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hl::HLElement;
use crate::letter::{Genus, Letter};
use crate::lie::LieElement;
use crate::rational::{fmt_q, Q};
use crate::sp::SpGenerator;
use crate::tensor::Tensor;
use crate::tree::TreeElement;
use crate::wedge::MultiWedgeElement;

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Q),
    Tensor(Tensor),
    Lie(LieElement),
    Tree(TreeElement),
    HL(HLElement),
    Wedge(MultiWedgeElement),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Tensor(_) => "tensor",
            Value::Lie(_) => "Lie element",
            Value::Tree(_) => "tree",
            Value::HL(_) => "H⊗L element",
            Value::Wedge(_) => "wedge",
        }
    }

    /// Tensor degree of the underlying tensor image.
    pub fn degree(&self) -> usize {
        match self {
            Value::Scalar(_) => 0,
            Value::Tensor(t) => t.degree(),
            Value::Lie(x) => x.degree(),
            Value::Tree(t) => t.degree() + 2,
            Value::HL(h) => h.degree() + 2,
            Value::Wedge(w) => w.sizes().iter().sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Scalar(c) => c.is_zero(),
            Value::Tensor(t) => t.is_zero(),
            Value::Lie(x) => x.is_zero(),
            Value::Tree(t) => t.is_zero(),
            Value::HL(h) => h.is_zero(),
            Value::Wedge(w) => w.is_zero(),
        }
    }

    /// The image in the tensor algebra (trees via `η`, wedges antisymmetrized).
    pub fn to_tensor(&self) -> Tensor {
        match self {
            Value::Scalar(c) => Tensor::scalar(c.clone()),
            Value::Tensor(t) => t.clone(),
            Value::Lie(x) => x.iota(),
            Value::Tree(t) => t.eta_tensor(),
            Value::HL(h) => h.to_tensor(),
            Value::Wedge(w) => w.to_tensor(),
        }
    }

    pub fn scale(&self, c: &Q) -> Value {
        match self {
            Value::Scalar(x) => Value::Scalar(x * c),
            Value::Tensor(t) => Value::Tensor(t.scale(c)),
            Value::Lie(x) => Value::Lie(x.scale(c)),
            Value::Tree(t) => Value::Tree(t.scale(c)),
            Value::HL(h) => Value::HL(h.scale(c)),
            Value::Wedge(w) => Value::Wedge(w.scale(c)),
        }
    }

    pub fn sp_apply(&self, generator: SpGenerator) -> Value {
        match self {
            Value::Scalar(_) => Value::Scalar(Q::zero()),
            Value::Tensor(t) => Value::Tensor(t.sp_apply(generator)),
            Value::Lie(x) => Value::Lie(x.sp_apply(generator)),
            Value::Tree(t) => Value::Tree(t.sp_apply(generator)),
            Value::HL(h) => Value::HL(h.sp_apply(generator)),
            Value::Wedge(w) => Value::Wedge(w.sp_apply(generator)),
        }
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter + Copy) -> Value {
        match self {
            Value::Scalar(c) => Value::Scalar(c.clone()),
            Value::Tensor(t) => Value::Tensor(t.map_letters(f)),
            Value::Lie(x) => Value::Lie(x.map_letters(f)),
            Value::Tree(t) => Value::Tree(t.map_letters(f)),
            Value::HL(h) => Value::HL(h.map_letters(f)),
            Value::Wedge(w) => {
                let mut out = MultiWedgeElement::zero(w.sizes().to_vec());
                for (key, c) in w.terms() {
                    out.add_blocks(key.iter().map(|b| b.iter().map(|&l| f(l)).collect()).collect(), c.clone());
                }
                Value::Wedge(out)
            }
        }
    }

    /// Equality of values, comparing tensor images when the kinds differ.
    pub fn same_as(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Wedge(a), Value::Wedge(b)) => a == b,
            (Value::Wedge(a), _) | (_, Value::Wedge(a)) if a.is_zero() => other.is_zero() && self.is_zero(),
            (Value::Wedge(_), _) | (_, Value::Wedge(_)) => false,
            (Value::Tree(a), Value::Tree(b)) => a.eta_tensor() == b.eta_tensor(),
            _ => self.degree() == other.degree() && self.to_tensor() == other.to_tensor(),
        }
    }

    /// Largest letter index, for genus checks.
    pub fn max_index(&self) -> u32 {
        match self {
            Value::Scalar(_) => 0,
            Value::Tensor(t) => t.max_index(),
            Value::Lie(x) => x.max_index(),
            Value::Tree(t) => t.max_index(),
            Value::HL(h) => h.max_index(),
            Value::Wedge(w) => w.terms().flat_map(|(k, _)| k.iter().flatten().map(|l| l.index())).max().unwrap_or(0),
        }
    }

    pub fn as_scalar(&self) -> Option<&Q> {
        match self {
            Value::Scalar(c) => Some(c),
            _ => None,
        }
    }

    /// The Lie element represented, if the value is a Lie element or a
    /// degree-1 tensor.
    pub fn as_lie(&self) -> Option<LieElement> {
        match self {
            Value::Lie(x) => Some(x.clone()),
            Value::Tensor(t) if t.degree() == 1 => LieElement::from_tensor(t).ok(),
            _ => None,
        }
    }

    /// `η` image for trees, itself for `H ⊗ L` elements.
    pub fn as_hl(&self) -> Result<HLElement> {
        match self {
            Value::HL(h) => Ok(h.clone()),
            Value::Tree(t) => Ok(t.eta()),
            Value::Tensor(t) if t.degree() >= 2 => HLElement::from_tensor(t),
            other => Err(Error::arg(format!("expected a tree or H⊗L element, found a {}", other.kind()))),
        }
    }

    pub fn check_genus(&self, g: Genus) -> Result<()> {
        let m = self.max_index();
        if m > g.get() {
            return Err(Error::IndexOutOfRange { index: m, genus: g.get() });
        }
        Ok(())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => f.write_str(&fmt_q(c)),
            Value::Tensor(t) => write!(f, "{t}"),
            Value::Lie(x) => write!(f, "{x}"),
            Value::Tree(t) => write!(f, "{t}"),
            Value::HL(h) => write!(f, "{h}"),
            Value::Wedge(w) => write!(f, "{w}"),
        }
    }
}
