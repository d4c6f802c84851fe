use std::fmt;

/// Static description of one check id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckInfo {
    pub id: &'static str,
    pub suite: &'static str,
    pub claim: &'static str,
    pub formula: &'static str,
    pub tolerance: &'static str,
    pub control: &'static str,
}

impl fmt::Display for CheckInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({} suite)", self.id, self.suite)?;
        writeln!(f, "  claim:     {}", self.claim)?;
        writeln!(f, "  formula:   {}", self.formula)?;
        writeln!(f, "  tolerance: {}", self.tolerance)?;
        write!(f, "  control:   {}", self.control)
    }
}

pub const CHECKS: &[CheckInfo] = &[
    CheckInfo {
        id: "generator.laguerre",
        suite: "generator",
        claim: "L^(n+1)_{d-2} Λ = Λ L^(n)_d on every J_λ (β ≥ 1, d ≥ 2)",
        formula: "max |M_3 M_1 - M_1 M_2| over the Jack basis below each top partition",
        tolerance: "absolute, tolerances.generator (default 1e-10)",
        control: "upper process at d - 2 + shift",
    },
    CheckInfo {
        id: "generator.jacobi",
        suite: "generator",
        claim: "A^(n+1)_{a-1,b-1} Λ = Λ A^(n)_{a,b} on every J_λ (β ≥ 1, a, b ≥ 1)",
        formula: "max |M_3 M_1 - M_1 M_2|; A = 2B2 - 2D + 2θa B1 - 2θ(a+b) B3",
        tolerance: "absolute, tolerances.generator (default 1e-10)",
        control: "upper process at a - 1 + shift",
    },
    CheckInfo {
        id: "generator.gamma-ratio",
        suite: "generator",
        claim: "J_λ(1_n) c(λ_(i)) J_λ(i)(1_{n+1}) / [J_λ(i)(1_n) c(λ) J_λ(1_{n+1})] = 1",
        formula: "J_λ(1_n)/J_λ(i)(1_n) = θ^-1 Γ((n+1-i)θ+λ_i)/Γ((n+1-i)θ+λ_i-1) and the matching ratios for c and 1_{n+1}",
        tolerance: "exact in rational arithmetic; relative tolerances.gamma (default 1e-12) for the Gamma route",
        control: "closed forms evaluated at θ + shift",
    },
    CheckInfo {
        id: "generator.eval-shift",
        suite: "generator",
        claim: "eval(λ, n+1, θ) - eval(λ, n, θ) = 2θ|λ|",
        formula: "eval(λ, n, θ) = 2B(λ') - 2θB(λ) + 2θ(n-1)|λ|",
        tolerance: "exact in rational arithmetic; absolute tolerances.gamma in f64",
        control: "right side at θ + shift",
    },
    CheckInfo {
        id: "generator.operator-actions",
        suite: "generator",
        claim: "B1 J_λ = J_λ(1_n) Σ binom(λ, λ_(i)) J_λ(i)/J_λ(i)(1_n); B2 adds the factor λ_i - 1 + (n-i)θ; B3 J_λ = |λ| J_λ",
        formula: "operators applied monomial by monomial against the closed forms, every λ below the top",
        tolerance: "absolute on monomial coefficients, tolerances.actions (default 1e-9)",
        control: "closed forms at θ + shift",
    },
    CheckInfo {
        id: "generator.dyson",
        suite: "generator",
        claim: "the Dyson generator equals the commutator B1 B2 - B2 B1",
        formula: "max coefficient of [B1, B2] J_λ - L_Dyson J_λ",
        tolerance: "absolute, tolerances.actions (default 1e-9)",
        control: "Dyson generator at θ + shift; none for one particle",
    },
    CheckInfo {
        id: "semigroup.laguerre",
        suite: "semigroup",
        claim: "e^{tL^(n+1)_{d-2}} Λ = Λ e^{tL^(n)_d} on the Jack basis",
        formula: "max |e^{tM_3} M_1 - M_1 e^{tM_2}|, exact Taylor sum of the nilpotent generator in rationals",
        tolerance: "absolute, tolerances.semigroup (default 1e-9)",
        control: "upper process at d - 2 + shift",
    },
    CheckInfo {
        id: "semigroup.jacobi",
        suite: "semigroup",
        claim: "e^{tA^(n+1)_{a-1,b-1}} Λ = Λ e^{tA^(n)_{a,b}} on the Jack basis",
        formula: "max |e^{tM_3} M_1 - M_1 e^{tM_2}|, Padé scaling and squaring in f64",
        tolerance: "absolute, tolerances.semigroup (default 1e-9)",
        control: "upper process at a - 1 + shift",
    },
    CheckInfo {
        id: "kernel.eigenrelation",
        suite: "kernel",
        claim: "∫ λ_{n,n+1}(x, y) J_λ(y) dy = c(λ, n, θ) J_λ(x)",
        formula: "c(λ, n, θ) = Γ((n+1)θ)/Γ(θ) Π_i Γ((n+1-i)θ+λ_i)/Γ((n+2-i)θ+λ_i); left side by tensor Gauss-Jacobi",
        tolerance: "relative, tolerances.kernel (default 1e-6)",
        control: "right side evaluated at (1 + shift)·x",
    },
    CheckInfo {
        id: "kernel.stochastic",
        suite: "kernel",
        claim: "the Dixon-Anderson kernel is a probability density in y",
        formula: "∫ λ_{n,n+1}(x, y) dy = 1",
        tolerance: "relative, tolerances.kernel (default 1e-6)",
        control: "none",
    },
    CheckInfo {
        id: "kernel.mc",
        suite: "kernel",
        claim: "Gibbs samples of λ(x, ·) reproduce c(λ, n, θ) J_λ(x)",
        formula: "batch-means Monte Carlo mean of J_λ(Y)",
        tolerance: "tolerances.sigma standard errors (default 3)",
        control: "right side evaluated at (1 + shift)·x",
    },
    CheckInfo {
        id: "step2.norm",
        suite: "sde",
        claim: "the norm ‖X(t)‖ of the β-Laguerre process is a squared Bessel process of dimension β(dn/2 + n(n-1))",
        formula: "E‖X(t)‖ = ‖x0‖ + β(dn/2 + n(n-1)) t",
        tolerance: "tolerances.sigma standard errors (default 3)",
        control: "dimension computed with d + sde shift",
    },
    CheckInfo {
        id: "sde.exact-moment",
        suite: "sde",
        claim: "simulated E_x J_λ(X(t)) matches the Jack-basis semigroup",
        formula: "top row of e^{tM} against (J_ν(x))_ν",
        tolerance: "tolerances.sigma standard errors (default 3)",
        control: "exact value with d or a shifted by the sde shift",
    },
    CheckInfo {
        id: "sde.bias",
        suite: "sde",
        claim: "the discretization error decreases when the step rule halves",
        formula: "|mean(h/2) - exact| < |mean(h) - exact| with h = min(dt, gap_safety·gap²/(1+max|x|)) and the coarse error significant",
        tolerance: "coarse error above tolerances.sigma standard errors",
        control: "none",
    },
    CheckInfo {
        id: "corollary.quadrature",
        suite: "ensemble",
        claim: "pushing M^{n+1}_{a-1,b-1} through Λ gives M^n_{a,b} (one particle)",
        formula: "E[y^k] with x ~ M^2_{a-1,b-1}, y ~ Λ(x, ·) against the Beta(βa/2, βb/2) moment",
        tolerance: "absolute, tolerances.corollary_quadrature (default 1e-6)",
        control: "left ensemble at a - 1 + shift",
    },
    CheckInfo {
        id: "corollary.mc",
        suite: "ensemble",
        claim: "pushing M^{n+1}_{a-1,b-1} through Λ gives M^n_{a,b}",
        formula: "two Monte Carlo estimators of E[J_λ(y)], joint chain on (x, y) against the n-particle ensemble",
        tolerance: "tolerances.sigma combined standard errors (default 3)",
        control: "left ensemble at a - 1 + ensemble_mc shift",
    },
    CheckInfo {
        id: "ensemble.stationarity",
        suite: "ensemble",
        claim: "M^n_{a,b} is stationary for the β-Jacobi process",
        formula: "moments of X(t) started from ensemble draws against an independent ensemble run",
        tolerance: "tolerances.sigma combined standard errors (default 3)",
        control: "reference ensemble at a + ensemble_mc shift",
    },
    CheckInfo {
        id: "ensemble.beta-moments",
        suite: "ensemble",
        claim: "the one-particle ensemble is Beta(βa/2, βb/2)",
        formula: "Metropolis moments E[x^k], k ≤ 4, against the Beta moments",
        tolerance: "tolerances.sigma standard errors (default 3)",
        control: "Beta moments at a + ensemble_mc shift",
    },
    CheckInfo {
        id: "ensemble.reflection",
        suite: "ensemble",
        claim: "M^n_{a,a} is symmetric under x ↦ 1 - x",
        formula: "E Σ (x_i - 1/2)^k = 0 for odd k",
        tolerance: "tolerances.sigma standard errors (default 3)",
        control: "none",
    },
];

pub fn describe_check(id: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.id == id)
}
