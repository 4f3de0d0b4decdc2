use std::fmt;

/// Which engine produced a price.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Series,
    GilPelaez,
    Discretization,
    BlackScholes,
}

impl Engine {
    pub const ALL: [Engine; 4] = [
        Engine::Series,
        Engine::GilPelaez,
        Engine::Discretization,
        Engine::BlackScholes,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Series => "series",
            Engine::GilPelaez => "gil_pelaez",
            Engine::Discretization => "discretization",
            Engine::BlackScholes => "black_scholes",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DiagnosticValue {
    Number(f64),
    Count(usize),
    Flag(bool),
    Text(String),
}

/// Ordered key-value list attached to a price.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics(Vec<(String, DiagnosticValue)>);

impl Diagnostics {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: DiagnosticValue) {
        self.0.push((key.into(), value));
    }

    pub fn number(&mut self, key: impl Into<String>, value: f64) {
        self.push(key, DiagnosticValue::Number(value));
    }

    pub fn count(&mut self, key: impl Into<String>, value: usize) {
        self.push(key, DiagnosticValue::Count(value));
    }

    pub fn flag(&mut self, key: impl Into<String>, value: bool) {
        self.push(key, DiagnosticValue::Flag(value));
    }

    pub fn text(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.push(key, DiagnosticValue::Text(value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&DiagnosticValue> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn get_number(&self, key: &str) -> Option<f64> {
        match self.get(key)? {
            DiagnosticValue::Number(x) => Some(*x),
            DiagnosticValue::Count(n) => Some(*n as f64),
            _ => None,
        }
    }

    pub fn get_flag(&self, key: &str) -> Option<bool> {
        match self.get(key)? {
            DiagnosticValue::Flag(b) => Some(*b),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &DiagnosticValue)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// A price together with the bookkeeping of the engine that computed it.
///
/// `terms_used` counts series terms for the series engine and integrand
/// evaluations or grid nodes for the numerical engines.
#[derive(Debug, Clone, PartialEq)]
pub struct PricingResult {
    pub price: f64,
    pub engine: Engine,
    pub terms_used: usize,
    pub error_estimate: f64,
    pub diagnostics: Diagnostics,
}
