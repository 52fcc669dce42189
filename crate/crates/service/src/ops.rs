//! Stateless operations behind the HTTP endpoints and the CLI subcommands.
//! Every request and response is plain serde data.

use serde::{Deserialize, Serialize};

use folwb_core::heyting::{check_heyting, eval_formula, AtomInterp, FiniteHeyting};
use folwb_core::kernel::{self, lj_search, ljt_search, Calculus, Derivation, Judgment, ProofSearchBudget, SearchError};
use folwb_core::models::{
    countermodel_kripke, countermodel_tarski, wkl_encode, Bounds, Countermodel, Env, FiniteKripke, FiniteModel, ModelError,
    TreeOracle,
};
use folwb_core::nbe;
use folwb_core::syntax::{close, de_morgan, dn_translate, parse_formula, print_formula, Formula};

use crate::error::ApiError;

/// A formula given either in surface syntax or as its JSON tree.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormulaInput {
    Text(String),
    Tree(Formula),
}

impl FormulaInput {
    pub fn resolve(&self) -> Result<Formula, ApiError> {
        match self {
            FormulaInput::Text(s) => Ok(parse_formula(s)?),
            FormulaInput::Tree(f) => Ok(f.clone()),
        }
    }
}

fn resolve_all(items: &[FormulaInput]) -> Result<Vec<Formula>, ApiError> {
    items.iter().map(FormulaInput::resolve).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Printed {
    pub formula: Formula,
    pub printed: String,
    pub size: usize,
}

impl Printed {
    pub fn of(formula: Formula) -> Printed {
        Printed { printed: print_formula(&formula), size: formula.size(), formula }
    }
}

#[derive(Debug, Deserialize)]
pub struct ParseRequest {
    pub formula: FormulaInput,
}

pub fn parse(req: &ParseRequest) -> Result<Printed, ApiError> {
    Ok(Printed::of(req.formula.resolve()?))
}

#[derive(Debug, Deserialize)]
pub struct CheckRequest {
    pub derivation: Derivation,
    #[serde(default)]
    pub calc: Option<Calculus>,
}

#[derive(Debug, Serialize)]
pub struct CheckResponse {
    pub calc: Calculus,
    pub end: Judgment,
    pub size: usize,
}

pub fn check(req: &CheckRequest) -> Result<CheckResponse, ApiError> {
    if let Some(c) = req.calc {
        if c != req.derivation.calc {
            return Err(ApiError::unprocessable(
                "wrong_calculus",
                format!("expected a {c:?} derivation, found {:?}", req.derivation.calc),
            ));
        }
    }
    let end = kernel::check(&req.derivation)?;
    Ok(CheckResponse { calc: req.derivation.calc, end, size: req.derivation.size() })
}

#[derive(Debug, Deserialize)]
pub struct NormalizeRequest {
    pub derivation: Derivation,
}

#[derive(Debug, Serialize)]
pub struct DerivationResponse {
    pub derivation: Derivation,
}

pub fn normalize(req: &NormalizeRequest) -> Result<DerivationResponse, ApiError> {
    kernel::check(&req.derivation)?;
    Ok(DerivationResponse { derivation: nbe::normalize(&req.derivation)? })
}

#[derive(Debug, Deserialize)]
pub struct TarskiRequest {
    pub model: FiniteModel,
    pub formula: FormulaInput,
    #[serde(default)]
    pub ctx: Vec<FormulaInput>,
    #[serde(default)]
    pub env: Env,
}

#[derive(Debug, Serialize)]
pub struct Truth {
    pub value: bool,
}

/// `M, ρ ⊨ ctx ⇒ φ`; with an empty context this is plain satisfaction.
pub fn eval_tarski(req: &TarskiRequest) -> Result<Truth, ApiError> {
    req.model.validate()?;
    req.env.check(req.model.domain)?;
    let value = req.model.entails_at(&req.env, &resolve_all(&req.ctx)?, &req.formula.resolve()?)?;
    Ok(Truth { value })
}

#[derive(Debug, Deserialize)]
pub struct KripkeRequest {
    pub model: FiniteKripke,
    pub formula: FormulaInput,
    #[serde(default)]
    pub ctx: Vec<FormulaInput>,
    #[serde(default)]
    pub env: Env,
    #[serde(default)]
    pub world: usize,
}

#[derive(Debug, Serialize)]
pub struct Forcing {
    pub value: bool,
    /// The same question at every world.
    pub worlds: Vec<bool>,
}

pub fn eval_kripke(req: &KripkeRequest) -> Result<Forcing, ApiError> {
    let k = &req.model;
    if req.world >= k.worlds() {
        return Err(ApiError::unprocessable("model_error", format!("world {} does not exist", req.world)));
    }
    req.env.check(k.domain())?;
    let (ctx, phi) = (resolve_all(&req.ctx)?, req.formula.resolve()?);
    let worlds = (0..k.worlds()).map(|w| k.entails_at(w, &req.env, &ctx, &phi)).collect::<Result<Vec<_>, ModelError>>()?;
    Ok(Forcing { value: worlds[req.world], worlds })
}

#[derive(Debug, Deserialize)]
pub struct HeytingRequest {
    pub algebra: FiniteHeyting,
    pub interp: AtomInterp,
    pub formula: FormulaInput,
}

#[derive(Debug, Serialize)]
pub struct AlgebraValue {
    pub value: usize,
    pub top: bool,
}

pub fn eval_heyting(req: &HeytingRequest) -> Result<AlgebraValue, ApiError> {
    let report = check_heyting(&req.algebra);
    if let Some(v) = report.violations.first() {
        return Err(ApiError::unprocessable("algebra_error", format!("not a Heyting algebra: {} fails at {:?}", v.law, v.elements)));
    }
    req.interp.validate(&req.algebra)?;
    let value = eval_formula(&req.algebra, &req.interp, &req.formula.resolve()?);
    Ok(AlgebraValue { value, top: (0..req.algebra.size).all(|x| req.algebra.le[x][value]) })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Tarski,
    #[default]
    Kripke,
}

#[derive(Debug, Deserialize)]
pub struct CountermodelRequest {
    pub formula: FormulaInput,
    #[serde(default)]
    pub mode: Semantics,
    #[serde(default)]
    pub max_domain: Option<usize>,
    #[serde(default)]
    pub max_worlds: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct CountermodelResponse {
    /// `null` when nothing falsifies the formula within the bounds.
    pub countermodel: Option<Countermodel>,
    pub bounds: Bounds,
}

pub fn countermodel(req: &CountermodelRequest) -> Result<CountermodelResponse, ApiError> {
    let d = Bounds::default();
    let bounds = Bounds {
        max_domain: req.max_domain.unwrap_or(d.max_domain),
        max_worlds: req.max_worlds.unwrap_or(d.max_worlds),
        ..d
    };
    let phi = req.formula.resolve()?;
    let found = match req.mode {
        Semantics::Kripke => countermodel_kripke(&phi, &bounds),
        Semantics::Tarski => countermodel_tarski(&phi, &bounds),
    };
    match found {
        Ok(c) => Ok(CountermodelResponse { countermodel: Some(c), bounds }),
        Err(ModelError::Exhausted) => Ok(CountermodelResponse { countermodel: None, bounds }),
        Err(e) => Err(e.into()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Translation {
    Demorgan,
    Dn,
    Close,
}

#[derive(Debug, Deserialize)]
pub struct TranslateRequest {
    pub formula: FormulaInput,
    pub to: Translation,
}

pub fn translate(req: &TranslateRequest) -> Result<Printed, ApiError> {
    let phi = req.formula.resolve()?;
    Ok(Printed::of(match req.to {
        Translation::Demorgan => de_morgan(&phi),
        Translation::Dn => dn_translate(&phi),
        Translation::Close => close(&phi),
    }))
}

#[derive(Debug, Deserialize)]
pub struct ProveRequest {
    pub formula: FormulaInput,
    #[serde(default)]
    pub ctx: Vec<FormulaInput>,
    #[serde(default)]
    pub calc: Option<Calculus>,
    #[serde(default)]
    pub budget: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct ProveResponse {
    /// `null` when the budget ran out.
    pub derivation: Option<Derivation>,
}

pub fn prove(req: &ProveRequest) -> Result<ProveResponse, ApiError> {
    let (ctx, phi) = (resolve_all(&req.ctx)?, req.formula.resolve()?);
    let budget = req.budget.map_or_else(ProofSearchBudget::default, ProofSearchBudget::depth);
    let found = match req.calc.unwrap_or(Calculus::Ljt) {
        Calculus::Ljt => ljt_search(&ctx, &phi, &budget),
        Calculus::Lj => lj_search(&ctx, &phi, &budget),
        other => return Err(ApiError::bad_request("usage", format!("proof search produces ljt or lj, not {other:?}"))),
    };
    match found {
        Ok(d) => Ok(ProveResponse { derivation: Some(d) }),
        Err(SearchError::BudgetExhausted) => Ok(ProveResponse { derivation: None }),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Deserialize)]
pub struct WklRequest {
    pub tree: TreeOracle,
    pub depth: usize,
}

pub fn wkl(req: &WklRequest) -> Result<Printed, ApiError> {
    Ok(Printed::of(wkl_encode(&req.tree, req.depth)?))
}
