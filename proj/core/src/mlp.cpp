#include "dhw/mlp.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "dhw/rng.hpp"

namespace dhw::dynamics {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRow = Eigen::Map<RowMat>;
using MapRowC = Eigen::Map<const RowMat>;
using MapVec = Eigen::Map<Eigen::VectorXd>;
using MapVecC = Eigen::Map<const Eigen::VectorXd>;

inline double softsign(double z) { return z / (1.0 + std::abs(z)); }

// Adam over one flat parameter array.
struct Adam {
    std::vector<double> m, v;
    int step = 0;

    explicit Adam(size_t n) : m(n, 0.0), v(n, 0.0) {}

    void update(double* params, const double* grad, size_t n, double lr) {
        constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        ++step;
        const double c1 = 1.0 - std::pow(b1, step);
        const double c2 = 1.0 - std::pow(b2, step);
        for (size_t i = 0; i < n; ++i) {
            m[i] = b1 * m[i] + (1.0 - b1) * grad[i];
            v[i] = b2 * v[i] + (1.0 - b2) * grad[i] * grad[i];
            params[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
        }
    }
};

}  // namespace

Mlp::Mlp(int in_dim, int hidden, int out_dim, std::uint64_t seed)
    : in_(in_dim), hid_(hidden), out_(out_dim) {
    if (in_ < 1 || out_ < 1 || hid_ < 1 || hid_ > kMaxHidden)
        throw std::invalid_argument("Mlp: bad dimensions");
    w1_.resize(static_cast<size_t>(hid_) * in_);
    b1_.assign(hid_, 0.0);
    w2_.resize(static_cast<size_t>(hid_) * hid_);
    b2_.assign(hid_, 0.0);
    w3_.resize(static_cast<size_t>(out_) * hid_);
    b3_.assign(out_, 0.0);

    Rng rng(seed);
    auto init = [&](std::vector<double>& w, int fan_in) {
        const double limit = std::sqrt(6.0 / fan_in);
        for (auto& x : w) x = rng.uniform(-limit, limit);
    };
    init(w1_, in_);
    init(w2_, hid_);
    init(w3_, hid_);
}

void Mlp::forward(const double* x, double* y) const {
    double h1[kMaxHidden], h2[kMaxHidden];
    for (int i = 0; i < hid_; ++i) {
        const double* row = w1_.data() + static_cast<size_t>(i) * in_;
        double s = b1_[i];
        for (int j = 0; j < in_; ++j) s += row[j] * x[j];
        h1[i] = softsign(s);
    }
    for (int i = 0; i < hid_; ++i) {
        const double* row = w2_.data() + static_cast<size_t>(i) * hid_;
        double s = b2_[i];
        for (int j = 0; j < hid_; ++j) s += row[j] * h1[j];
        h2[i] = softsign(s);
    }
    for (int o = 0; o < out_; ++o) {
        const double* row = w3_.data() + static_cast<size_t>(o) * hid_;
        double s = b3_[o];
        for (int j = 0; j < hid_; ++j) s += row[j] * h2[j];
        y[o] = s;
    }
}

Eigen::MatrixXd Mlp::forward_batch(const Eigen::MatrixXd& x) const {
    MapRowC w1(w1_.data(), hid_, in_), w2(w2_.data(), hid_, hid_), w3(w3_.data(), out_, hid_);
    MapVecC b1(b1_.data(), hid_), b2(b2_.data(), hid_), b3(b3_.data(), out_);
    Eigen::MatrixXd h1 = ((w1 * x).colwise() + b1).unaryExpr([](double z) { return softsign(z); });
    Eigen::MatrixXd h2 = ((w2 * h1).colwise() + b2).unaryExpr([](double z) { return softsign(z); });
    return (w3 * h2).colwise() + b3;
}

double Mlp::train(const Eigen::MatrixXd& x_train, const Eigen::MatrixXd& y_train,
                  const Eigen::MatrixXd& x_val, const Eigen::MatrixXd& y_val,
                  const TrainOptions& opts) {
    const auto n = x_train.cols();
    if (n < 1 || y_train.cols() != n) throw std::invalid_argument("Mlp::train: bad batch");

    MapRow w1(w1_.data(), hid_, in_), w2(w2_.data(), hid_, hid_), w3(w3_.data(), out_, hid_);
    MapVec b1(b1_.data(), hid_), b2(b2_.data(), hid_), b3(b3_.data(), out_);

    Adam a_w1(w1_.size()), a_b1(b1_.size()), a_w2(w2_.size()), a_b2(b2_.size()),
        a_w3(w3_.size()), a_b3(b3_.size());

    auto val_loss = [&]() {
        if (x_val.cols() == 0) return 0.0;
        return (forward_batch(x_val) - y_val).squaredNorm() /
               static_cast<double>(x_val.cols() * out_);
    };

    double best = val_loss();
    std::vector<double> best_params = parameters();
    int bad_checks = 0;

    const auto dsign = [](double h) {
        const double t = 1.0 - std::abs(h);
        return t * t;  // softsign'(z) expressed through the activation value
    };

    for (int epoch = 1; epoch <= opts.max_epochs; ++epoch) {
        Eigen::MatrixXd z1 = (w1 * x_train).colwise() + b1;
        Eigen::MatrixXd h1 = z1.unaryExpr([](double z) { return softsign(z); });
        Eigen::MatrixXd z2 = (w2 * h1).colwise() + b2;
        Eigen::MatrixXd h2 = z2.unaryExpr([](double z) { return softsign(z); });
        Eigen::MatrixXd out = (w3 * h2).colwise() + b3;

        Eigen::MatrixXd dy = (out - y_train) * (2.0 / static_cast<double>(n * out_));
        RowMat g_w3 = dy * h2.transpose();
        Eigen::VectorXd g_b3 = dy.rowwise().sum();

        Eigen::MatrixXd dh2 = w3.transpose() * dy;
        Eigen::MatrixXd dz2 = dh2.cwiseProduct(h2.unaryExpr(dsign));
        RowMat g_w2 = dz2 * h1.transpose();
        Eigen::VectorXd g_b2 = dz2.rowwise().sum();

        Eigen::MatrixXd dh1 = w2.transpose() * dz2;
        Eigen::MatrixXd dz1 = dh1.cwiseProduct(h1.unaryExpr(dsign));
        RowMat g_w1 = dz1 * x_train.transpose();
        Eigen::VectorXd g_b1 = dz1.rowwise().sum();

        a_w1.update(w1_.data(), g_w1.data(), w1_.size(), opts.learning_rate);
        a_b1.update(b1_.data(), g_b1.data(), b1_.size(), opts.learning_rate);
        a_w2.update(w2_.data(), g_w2.data(), w2_.size(), opts.learning_rate);
        a_b2.update(b2_.data(), g_b2.data(), b2_.size(), opts.learning_rate);
        a_w3.update(w3_.data(), g_w3.data(), w3_.size(), opts.learning_rate);
        a_b3.update(b3_.data(), g_b3.data(), b3_.size(), opts.learning_rate);

        if (epoch % opts.check_every == 0 || epoch == opts.max_epochs) {
            const double loss = val_loss();
            if (loss < best - opts.min_improve) {
                best = loss;
                best_params = parameters();
                bad_checks = 0;
            } else if (++bad_checks >= opts.patience) {
                break;
            }
        }
    }
    set_parameters(best_params);
    return best;
}

std::vector<double> Mlp::parameters() const {
    std::vector<double> flat;
    flat.reserve(w1_.size() + b1_.size() + w2_.size() + b2_.size() + w3_.size() + b3_.size());
    for (const auto* v : {&w1_, &b1_, &w2_, &b2_, &w3_, &b3_})
        flat.insert(flat.end(), v->begin(), v->end());
    return flat;
}

void Mlp::set_parameters(const std::vector<double>& flat) {
    size_t off = 0;
    for (auto* v : {&w1_, &b1_, &w2_, &b2_, &w3_, &b3_}) {
        if (off + v->size() > flat.size()) throw std::invalid_argument("Mlp: parameter size");
        std::copy(flat.begin() + off, flat.begin() + off + v->size(), v->begin());
        off += v->size();
    }
    if (off != flat.size()) throw std::invalid_argument("Mlp: parameter size");
}

}  // namespace dhw::dynamics
