use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field_group::FiniteGroup;
use crate::hypergraph::{cayley_hypergraph, MultilinearForm};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstochasticReport {
    pub pass: bool,
    #[serde(with = "rational::serde_str")]
    pub worst_marginal: Rational,
    /// Largest marginal of each slot.
    #[serde(skip)]
    pub slot_max: Vec<Rational>,
}

/// Checks `|A|(1,…,e_s,…,1) ≤ 1` for every slot and index, exactly.
pub fn is_plane_substochastic(form: &MultilinearForm) -> SubstochasticReport {
    let slot_max: Vec<Rational> = form
        .abs_marginals()
        .into_iter()
        .map(|m| m.into_iter().max().unwrap_or_else(rational::zero))
        .collect();
    let worst = slot_max.iter().copied().max().unwrap_or_else(rational::zero);
    SubstochasticReport {
        pass: worst <= rational::one(),
        worst_marginal: worst,
        slot_max,
    }
}

/// A form that passed [`is_plane_substochastic`], with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneSubstochasticForm {
    form: MultilinearForm,
    certificate: SubstochasticReport,
}

impl PlaneSubstochasticForm {
    pub fn new(form: MultilinearForm) -> Result<Self> {
        let certificate = is_plane_substochastic(&form);
        if !certificate.pass {
            return Err(Error::precondition(format!(
                "form is not plane sub-stochastic: marginal {} exceeds 1",
                rational::format(&certificate.worst_marginal)
            )));
        }
        Ok(PlaneSubstochasticForm { form, certificate })
    }

    pub fn form(&self) -> &MultilinearForm {
        &self.form
    }

    pub fn certificate(&self) -> &SubstochasticReport {
        &self.certificate
    }
}

/// `A_g`: the adjacency form of `cay^{(t)}(Γ, q, {g})`, normalized by `t!`.
pub fn cayley_slice(group: &FiniteGroup, q: &[i64], g: &[usize]) -> Result<MultilinearForm> {
    cayley_hypergraph(group, q, &[g.to_vec()])?.adjacency_form(true)
}
