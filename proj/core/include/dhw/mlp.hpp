#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace dhw::dynamics {

// Small fully-connected regressor: two softsign hidden layers, linear
// output, trained full-batch with Adam on mean squared error. Sized for
// low-dimensional thermal features, so inference is a handful of small dot
// products.
class Mlp {
public:
    static constexpr int kMaxHidden = 64;

    Mlp() = default;
    Mlp(int in_dim, int hidden, int out_dim, std::uint64_t seed);

    struct TrainOptions {
        int max_epochs = 400;
        double learning_rate = 0.01;
        int check_every = 10;    // validation cadence, in epochs
        int patience = 8;        // stop after this many checks without improvement
        double min_improve = 1e-6;
    };

    // X: (in_dim x N), Y: (out_dim x N). Keeps the best-validation weights.
    // Returns the best validation MSE.
    double train(const Eigen::MatrixXd& x_train, const Eigen::MatrixXd& y_train,
                 const Eigen::MatrixXd& x_val, const Eigen::MatrixXd& y_val,
                 const TrainOptions& opts);

    void forward(const double* x, double* y) const;
    Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& x) const;

    int in_dim() const { return in_; }
    int hidden() const { return hid_; }
    int out_dim() const { return out_; }

    // Flat parameter access, used for serialization and equality checks.
    std::vector<double> parameters() const;
    void set_parameters(const std::vector<double>& flat);

private:
    int in_ = 0, hid_ = 0, out_ = 0;
    // row-major: w1 (hid x in), w2 (hid x hid), w3 (out x hid)
    std::vector<double> w1_, b1_, w2_, b2_, w3_, b3_;

    friend class MlpTrainer;
};

}  // namespace dhw::dynamics
