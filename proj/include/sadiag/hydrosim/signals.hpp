#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sadiag::hydrosim {

class SignalError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Scalar time signal.
///   constant: base
///   step:     base + magnitude H(t - t0)
///   ramp:     base, rising linearly from t0 to t1, then base + magnitude
///   pulse:    base + magnitude on [t0, t1)
///   samples:  piecewise linear through (times, values), held at the ends
class Signal {
public:
    enum class Shape { constant, step, ramp, pulse, samples };

    Signal() = default;
    static Signal constant(double value);
    static Signal step(double t0, double magnitude, double base = 0.0);
    static Signal ramp(double t0, double t1, double magnitude, double base = 0.0);
    static Signal pulse(double t0, double t1, double magnitude, double base = 0.0);
    static Signal samples(std::vector<double> times, std::vector<double> values);

    double operator()(double t) const;

    Shape shape() const { return shape_; }
    double onset() const { return t0_; }
    double magnitude() const { return magnitude_; }

    /// Text form used by scenario files, e.g. "step 0.5 1e-5".
    std::string describe() const;

private:
    Shape shape_ = Shape::constant;
    double t0_ = 0.0;
    double t1_ = 0.0;
    double magnitude_ = 0.0;
    double base_ = 0.0;
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Parses the text form: `const v`, `step t0 m [base]`, `ramp t0 t1 m [base]`,
/// `pulse t0 t1 m [base]`, `samples t v t v ...`. Throws SignalError.
Signal parse_signal(std::string_view text);

/// Additive fault term. Only step, ramp and samples shapes are accepted.
struct FaultSignal {
    std::string fault;
    Signal signal;
};

/// Throws SignalError when onset < 0, a value is not finite or the shape is
/// not a fault shape.
void check_fault_signal(const FaultSignal& fault);

}  // namespace sadiag::hydrosim
