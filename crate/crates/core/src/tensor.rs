//! Dense single-precision tensors.
//!
//! A [`Tensor`] is a cheap-to-clone handle to row-major `f32` storage plus an
//! optional gradient slot and an optional link into the recording graph (see
//! [`crate::autodiff`]). Values are immutable once created except through the
//! explicitly mutating entry points (`copy_from`, `apply_update`), which the
//! optimizer and weight loading use.

use std::cell::{Cell, Ref, RefCell};
use std::fmt;
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::autodiff::BackwardCtx;
use crate::error::{Error, Result};
use crate::rng::StreamRng;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) struct Inner {
    pub(crate) id: u64,
    pub(crate) shape: Vec<usize>,
    pub(crate) data: RefCell<Vec<f32>>,
    pub(crate) grad: RefCell<Option<Vec<f32>>>,
    pub(crate) requires_grad: Cell<bool>,
    pub(crate) ctx: RefCell<Option<BackwardCtx>>,
}

#[derive(Clone)]
pub struct Tensor {
    pub(crate) inner: Rc<Inner>,
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tensor")
            .field("shape", &self.inner.shape)
            .field("requires_grad", &self.inner.requires_grad.get())
            .finish()
    }
}

pub(crate) fn check_shape(shape: &[usize], len: usize) -> Result<()> {
    if shape.iter().any(|&d| d == 0) {
        return Err(Error::dim(
            "tensor",
            format!("zero-dim extent in shape {shape:?}"),
        ));
    }
    let numel: usize = shape.iter().product();
    if numel != len {
        return Err(Error::dim(
            "tensor",
            format!("shape {shape:?} wants {numel} values, got {len}"),
        ));
    }
    Ok(())
}

impl Tensor {
    pub fn from_vec(shape: &[usize], data: Vec<f32>) -> Result<Self> {
        check_shape(shape, data.len())?;
        Ok(Self::raw(shape.to_vec(), data))
    }

    pub(crate) fn raw(shape: Vec<usize>, data: Vec<f32>) -> Self {
        debug_assert_eq!(shape.iter().product::<usize>(), data.len());
        Tensor {
            inner: Rc::new(Inner {
                id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
                shape,
                data: RefCell::new(data),
                grad: RefCell::new(None),
                requires_grad: Cell::new(false),
                ctx: RefCell::new(None),
            }),
        }
    }

    pub fn scalar(v: f32) -> Self {
        Self::raw(vec![1], vec![v])
    }

    pub fn zeros(shape: &[usize]) -> Self {
        Self::full(shape, 0.0)
    }

    pub fn ones(shape: &[usize]) -> Self {
        Self::full(shape, 1.0)
    }

    pub fn full(shape: &[usize], v: f32) -> Self {
        let numel = shape.iter().product();
        Self::raw(shape.to_vec(), vec![v; numel])
    }

    /// I.i.d. normal(0, sigma) entries.
    pub fn randn(shape: &[usize], sigma: f32, rng: &mut StreamRng) -> Self {
        let numel = shape.iter().product();
        let data = (0..numel).map(|_| rng.normal() * sigma).collect();
        Self::raw(shape.to_vec(), data)
    }

    /// Truncated normal(0, sigma), cut at two standard deviations.
    pub fn trunc_normal(shape: &[usize], sigma: f32, rng: &mut StreamRng) -> Self {
        let numel = shape.iter().product();
        let data = (0..numel).map(|_| rng.trunc_normal(sigma)).collect();
        Self::raw(shape.to_vec(), data)
    }

    pub fn uniform(shape: &[usize], lo: f32, hi: f32, rng: &mut StreamRng) -> Self {
        let numel = shape.iter().product();
        let data = (0..numel).map(|_| rng.uniform_range(lo, hi)).collect();
        Self::raw(shape.to_vec(), data)
    }

    pub fn shape(&self) -> &[usize] {
        &self.inner.shape
    }

    pub fn numel(&self) -> usize {
        self.inner.shape.iter().product()
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    /// Borrow the values. Do not hold the guard across other tensor ops on
    /// the same tensor's mutation path.
    pub fn data(&self) -> Ref<'_, [f32]> {
        Ref::map(self.inner.data.borrow(), |v| v.as_slice())
    }

    pub fn to_vec(&self) -> Vec<f32> {
        self.inner.data.borrow().clone()
    }

    pub fn item(&self) -> f32 {
        debug_assert_eq!(self.numel(), 1);
        self.inner.data.borrow()[0]
    }

    pub fn requires_grad(&self) -> bool {
        self.inner.requires_grad.get()
    }

    pub fn set_requires_grad(&self, v: bool) -> &Self {
        self.inner.requires_grad.set(v);
        self
    }

    /// Marks the tensor as a trainable leaf and returns it.
    pub fn tracked(self) -> Self {
        self.set_requires_grad(true);
        self
    }

    pub fn grad(&self) -> Option<Vec<f32>> {
        self.inner.grad.borrow().clone()
    }

    pub fn zero_grad(&self) {
        *self.inner.grad.borrow_mut() = None;
    }

    pub(crate) fn accumulate_grad(&self, contrib: &[f32]) {
        let mut slot = self.inner.grad.borrow_mut();
        match slot.as_mut() {
            Some(g) => {
                for (gi, ci) in g.iter_mut().zip(contrib) {
                    *gi += ci;
                }
            }
            None => *slot = Some(contrib.to_vec()),
        }
    }

    /// A new leaf with copied values and no graph history.
    pub fn detach(&self) -> Tensor {
        Self::raw(self.inner.shape.clone(), self.to_vec())
    }

    pub fn is_leaf(&self) -> bool {
        self.inner.ctx.borrow().is_none()
    }

    /// Overwrites the values in place (weight loading). Not recorded.
    pub fn copy_from(&self, values: &[f32]) -> Result<()> {
        if values.len() != self.numel() {
            return Err(Error::dim(
                "copy_from",
                format!("expected {} values, got {}", self.numel(), values.len()),
            ));
        }
        self.inner.data.borrow_mut().copy_from_slice(values);
        Ok(())
    }

    /// In-place elementwise update (optimizer step). Not recorded.
    pub fn apply_update(&self, f: impl FnMut(usize, &mut f32)) {
        let mut data = self.inner.data.borrow_mut();
        let mut f = f;
        for (i, v) in data.iter_mut().enumerate() {
            f(i, v);
        }
    }

    pub fn all_finite(&self) -> bool {
        self.inner.data.borrow().iter().all(|v| v.is_finite())
    }

    pub(crate) fn set_ctx(&self, ctx: BackwardCtx) {
        self.set_requires_grad(true);
        *self.inner.ctx.borrow_mut() = Some(ctx);
    }
}

/// Row-major strides for a shape.
pub(crate) fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * shape[i + 1];
    }
    strides
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_extent() {
        assert!(Tensor::from_vec(&[2, 0], vec![]).is_err());
    }

    #[test]
    fn rejects_length_mismatch() {
        assert!(Tensor::from_vec(&[2, 2], vec![1.0; 3]).is_err());
    }

    #[test]
    fn row_major_strides() {
        assert_eq!(strides_of(&[2, 3, 4]), vec![12, 4, 1]);
        assert_eq!(strides_of(&[5]), vec![1]);
    }

    #[test]
    fn grad_accumulates() {
        let t = Tensor::zeros(&[3]).tracked();
        t.accumulate_grad(&[1.0, 2.0, 3.0]);
        t.accumulate_grad(&[1.0, 1.0, 1.0]);
        assert_eq!(t.grad().unwrap(), vec![2.0, 3.0, 4.0]);
        t.zero_grad();
        assert!(t.grad().is_none());
    }
}
