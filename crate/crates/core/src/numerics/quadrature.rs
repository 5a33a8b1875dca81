use super::poly::legendre_with_derivative;

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature1D {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Quadrature1D {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Integral of `f` over `[-1, 1]`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }
}

/// Nodes and weights of the `order`-point Gauss-Legendre rule, nodes ascending.
///
/// Roots of `P_order` are polished by Newton iteration from the Tricomi
/// estimate; the rule is exact for polynomials of degree `2 * order - 1`.
///
/// # Panics
///
/// If `order == 0`.
pub fn gauss_legendre(order: usize) -> Quadrature1D {
    assert!(order >= 1, "quadrature order must be positive");
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;

    // Roots are symmetric; solve for the positive half and mirror.
    for i in 0..n.div_ceil(2) {
        let theta = std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5);
        let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Quadrature1D { nodes, weights }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_rule() {
        let q = gauss_legendre(1);
        assert_eq!(q.nodes(), &[0.0]);
        assert!((q.weights()[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_rule() {
        let q = gauss_legendre(2);
        let r = 1.0 / 3f64.sqrt();
        assert!((q.nodes()[0] + r).abs() < 1e-15);
        assert!((q.nodes()[1] - r).abs() < 1e-15);
        assert!((q.weights()[0] - 1.0).abs() < 1e-15);
        assert!((q.weights()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn three_point_rule_integrates_quartic() {
        let q = gauss_legendre(3);
        assert!((q.integrate(|x| x.powi(4)) - 0.4).abs() < 1e-14);
    }

    #[test]
    fn exact_for_monomials_up_to_degree_2q_minus_1() {
        for order in 1..=12 {
            let q = gauss_legendre(order);
            for k in 0..=(2 * order - 1).min(20) {
                let exact = if k % 2 == 1 {
                    0.0
                } else {
                    2.0 / (k as f64 + 1.0)
                };
                let got = q.integrate(|x| x.powi(k as i32));
                assert!(
                    (got - exact).abs() <= 1e-13,
                    "order {order} k {k}: {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn weights_sum_to_two_and_nodes_increase() {
        for order in [1, 2, 5, 17, 64, 96, 257, 1024] {
            let q = gauss_legendre(order);
            let total: f64 = q.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-12, "order {order}: {total}");
            assert!(q.weights().iter().all(|&w| w > 0.0));
            assert!(q.nodes().windows(2).all(|w| w[0] < w[1]));
            assert!(q.nodes().iter().all(|&x| x > -1.0 && x < 1.0));
        }
    }
}
