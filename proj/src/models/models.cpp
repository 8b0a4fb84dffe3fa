#include "petis/models.hpp"

#include "petis/analysis.hpp"
#include "petis/error.hpp"
#include "petis/sampling.hpp"

#include <cmath>
#include <sstream>

namespace petis {
namespace {

double abs_value(const Vector& x) { return std::abs(x[0]); }
double euclidean_norm(const Vector& x) { return x.norm(); }
double squared_norm(const Vector& x) { return x.squaredNorm(); }

void check_lipschitz(const std::function<double(int, double)>& activation, const Vector& lipschitz) {
    constexpr int kPairs = 256;
    for (Eigen::Index i = 0; i < lipschitz.size(); ++i) {
        BallSampler pairs(2, 3.0, 0x11b5 + static_cast<std::uint64_t>(i));
        for (int p = 0; p < kPairs; ++p) {
            const Vector yz = pairs.next();
            const int coord = static_cast<int>(i);
            const double lhs = std::abs(activation(coord, yz[0]) - activation(coord, yz[1]));
            const double rhs = lipschitz[i] * std::abs(yz[0] - yz[1]);
            if (lhs > rhs * (1.0 + 1e-12) + 1e-15) {
                std::ostringstream os;
                os << "activation " << i << " violates its Lipschitz constant " << lipschitz[i]
                   << " between " << yz[0] << " and " << yz[1];
                fail(ErrorCode::InvalidArgument, os.str());
            }
        }
    }
}

} // namespace

ScalarParams scalar_params_c103() { return ScalarParams{1.02, 0.01, 1.5, 1}; }
ScalarParams scalar_params_a2of01() { return ScalarParams{1.02, 0.1, 1.5, 1}; }

ModelBundle make_scalar(double gain, const ScalarParams& p) {
    if (!(p.b > 0.0)) fail(ErrorCode::InvalidArgument, "scalar model needs B > 0");
    if (!(p.a1 > 0.0) || !(p.a2 >= 0.0))
        fail(ErrorCode::InvalidArgument, "scalar model needs A1 > 0 and A2 >= 0");
    const double positivity = std::min(p.a1, std::pow(p.a1, static_cast<double>(p.gamma + 1)));
    if (!(positivity + p.b * gain > 0.0)) {
        std::ostringstream os;
        os << "gain K = " << gain << " breaks positivity of the closed loop: need K > -A1/B = "
           << -p.a1 / p.b;
        fail(ErrorCode::InvalidArgument, os.str());
    }
    const double c = p.a1 + p.a2;
    const double rho = std::pow(c, static_cast<double>(p.gamma + 1)) + p.b * gain;

    const double a1 = p.a1;
    const double a2 = p.a2;
    const double bb = p.b;
    DiscreteSystem sys(
        1, 1,
        [a1, a2, bb](const Vector& x, const Vector& u) -> Vector {
            return Vector::Constant(1, a1 * x[0] + a2 * std::tanh(x[0]) + bb * u[0]);
        },
        [a1, a2](const Vector& x) -> Vector {
            return Vector::Constant(1, a1 * x[0] + a2 * std::tanh(x[0]));
        });
    Matrix k(1, 1);
    k(0, 0) = gain;

    std::ostringstream name;
    name << "scalar(A1=" << a1 << ",A2=" << a2 << ",B=" << bb << ",K=" << gain << ")";
    return ModelBundle{name.str(),
                       ModelKind::Scalar,
                       std::move(sys),
                       FeedbackLaw::linear(k),
                       LyapunovCertificate(1, abs_value, ClassK::identity(), ClassK::identity(), c,
                                           rho),
                       DelaySpec(p.gamma)};
}

Matrix linear_reference_a() {
    Matrix a(2, 2);
    a << 0.1, 1.2, 0.007, 1.05;
    return a;
}

Matrix linear_reference_b() {
    Matrix b(2, 2);
    b << 300, 200, 0.5, 0.001;
    return b;
}

Matrix linear_reference_gain() {
    Matrix k(2, 2);
    k << 0, -2, 0, 3;
    return k;
}

ModelBundle make_linear(const Matrix& a, const Matrix& b, const Matrix& gain, long gamma) {
    const DelaySpec delay(gamma);
    const LinearConstants lc = linear_constants(a, b, gain, delay);
    const int n = static_cast<int>(a.rows());
    const int m = static_cast<int>(b.cols());
    DiscreteSystem sys(
        n, m, [a, b](const Vector& x, const Vector& u) -> Vector { return a * x + b * u; },
        [a](const Vector& x) -> Vector { return a * x; });
    return ModelBundle{"linear",
                       ModelKind::Linear,
                       std::move(sys),
                       FeedbackLaw::linear(gain),
                       LyapunovCertificate(n, euclidean_norm, ClassK::identity(),
                                           ClassK::identity(), lc.c, lc.rho),
                       delay};
}

ModelBundle make_network(const NetworkParams& p) {
    const Eigen::Index n = p.c_diag.size();
    if (n < 1) fail(ErrorCode::InvalidArgument, "network needs at least one neuron");
    for (Eigen::Index i = 0; i < n; ++i) {
        const double ci = std::abs(p.c_diag[i]);
        if (!(ci > 0.0 && ci < 1.0))
            fail(ErrorCode::InvalidArgument, "network self-feedback must satisfy 0 < |c_i| < 1");
    }
    if (p.gamma != 0)
        fail(ErrorCode::InvalidArgument, "the network certificate is derived for Gamma = 0 only");
    if (p.lipschitz.size() != n || !(p.lipschitz.array() > 0.0).all())
        fail(ErrorCode::InvalidArgument, "Lipschitz constants l_i must be positive, one per neuron");
    const NetworkConstants nc = network_constants(p.c_diag, p.a, p.b, p.gain, p.lipschitz);

    std::function<double(int, double)> activation = p.activation;
    if (!activation) activation = [](int, double y) { return std::tanh(y); };
    check_lipschitz(activation, p.lipschitz);

    const Vector cd = p.c_diag;
    const Matrix a = p.a;
    const Matrix b = p.b;
    auto field = [activation](const Vector& x) {
        Vector fx(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) fx[i] = activation(static_cast<int>(i), x[i]);
        return fx;
    };
    DiscreteSystem sys(
        static_cast<int>(n), static_cast<int>(b.cols()),
        [cd, a, b, field](const Vector& x, const Vector& u) -> Vector {
            return cd.cwiseProduct(x) + a * field(x) + b * u;
        },
        [cd, a, field](const Vector& x) -> Vector { return cd.cwiseProduct(x) + a * field(x); });

    return ModelBundle{"network",
                       ModelKind::Network,
                       std::move(sys),
                       FeedbackLaw::linear(p.gain),
                       LyapunovCertificate(static_cast<int>(n), squared_norm, ClassK::square(),
                                           ClassK::square(), nc.c, nc.rho_min),
                       DelaySpec(p.gamma)};
}

NetworkParams reference_network_params() {
    // Drawn once from a seeded generator (self-feedback magnitudes in
    // [0.6, 0.95], |A| = 0.4, B = I + 0.2 * noise) and frozen here. The free
    // linearisation C + A has spectral radius ~1.11, so the uncontrolled
    // network moves away from the origin until tanh saturates.
    NetworkParams p;
    p.c_diag = Vector(4);
    p.c_diag << 0.948, 0.734, -0.89, -0.893;
    p.a = Matrix(4, 4);
    p.a << -0.0872, 0.2004, 0.084, -0.1023,  //
        -0.0528, -0.1289, -0.1591, -0.1656,  //
        0.2265, -0.0364, -0.2087, -0.004,    //
        -0.1011, -0.1378, -0.1398, 0.0377;
    p.b = Matrix(4, 4);
    p.b << 1.036, 0.155, -0.156, -0.001,  //
        -0.084, 0.994, 0.179, 0.171,      //
        0.104, 0.113, 0.911, 0.007,       //
        0.122, 0.106, 0.029, 1.141;
    p.lipschitz = Vector::Ones(4);
    p.gain = -p.b.fullPivLu().solve(Matrix(p.c_diag.asDiagonal()));
    p.gamma = 0;
    return p;
}

ModelBundle make_named_model(const std::string& name, long gamma) {
    if (name == "ex1-c103" || name == "ex1-a2of0.1") {
        ScalarParams p = name == "ex1-c103" ? scalar_params_c103() : scalar_params_a2of01();
        p.gamma = gamma;
        ModelBundle m = make_scalar(kScalarReferenceGain, p);
        m.name = name;
        return m;
    }
    if (name == "ex2-paper" || name == "ex2-designed") {
        const Matrix gain = name == "ex2-paper"
                                ? linear_reference_gain()
                                : design_linear_gain(linear_reference_a(), linear_reference_b(),
                                                     DelaySpec(gamma), 0.0)
                                      .gain;
        ModelBundle m = make_linear(linear_reference_a(), linear_reference_b(), gain, gamma);
        m.name = name;
        return m;
    }
    if (name == "ex3-reference") {
        NetworkParams p = reference_network_params();
        p.gamma = gamma;
        ModelBundle m = make_network(p);
        m.name = name;
        return m;
    }
    fail(ErrorCode::InvalidArgument, "unknown model name '" + name + "'");
}

std::vector<std::string> model_names() {
    return {"ex1-c103", "ex1-a2of0.1", "ex2-paper", "ex2-designed", "ex3-reference"};
}

} // namespace petis
