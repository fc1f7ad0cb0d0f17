#include "sadiag/hydrosim/signals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace sadiag::hydrosim {

namespace {

void require_finite(std::initializer_list<double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw SignalError("signal parameters must be finite");
    }
}

void require_window(double t0, double t1) {
    if (!(t1 > t0)) throw SignalError("signal window needs t1 > t0");
}

std::string num(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

Signal Signal::constant(double value) {
    require_finite({value});
    Signal s;
    s.base_ = value;
    return s;
}

Signal Signal::step(double t0, double magnitude, double base) {
    require_finite({t0, magnitude, base});
    Signal s;
    s.shape_ = Shape::step;
    s.t0_ = t0;
    s.magnitude_ = magnitude;
    s.base_ = base;
    return s;
}

Signal Signal::ramp(double t0, double t1, double magnitude, double base) {
    require_finite({t0, t1, magnitude, base});
    require_window(t0, t1);
    Signal s = step(t0, magnitude, base);
    s.shape_ = Shape::ramp;
    s.t1_ = t1;
    return s;
}

Signal Signal::pulse(double t0, double t1, double magnitude, double base) {
    Signal s = ramp(t0, t1, magnitude, base);
    s.shape_ = Shape::pulse;
    return s;
}

Signal Signal::samples(std::vector<double> times, std::vector<double> values) {
    if (times.empty() || times.size() != values.size()) {
        throw SignalError("samples need matching, non-empty time and value lists");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        require_finite({times[i], values[i]});
        if (i > 0 && !(times[i] > times[i - 1])) throw SignalError("sample times must be strictly increasing");
    }
    Signal s;
    s.shape_ = Shape::samples;
    s.t0_ = times.front();
    s.times_ = std::move(times);
    s.values_ = std::move(values);
    return s;
}

double Signal::operator()(double t) const {
    switch (shape_) {
        case Shape::constant: return base_;
        case Shape::step: return t >= t0_ ? base_ + magnitude_ : base_;
        case Shape::ramp:
            if (t < t0_) return base_;
            if (t >= t1_) return base_ + magnitude_;
            return base_ + magnitude_ * (t - t0_) / (t1_ - t0_);
        case Shape::pulse: return (t >= t0_ && t < t1_) ? base_ + magnitude_ : base_;
        case Shape::samples: {
            if (t <= times_.front()) return values_.front();
            if (t >= times_.back()) return values_.back();
            const auto it = std::upper_bound(times_.begin(), times_.end(), t);
            const std::size_t k = static_cast<std::size_t>(it - times_.begin());
            const double w = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
            return values_[k - 1] + w * (values_[k] - values_[k - 1]);
        }
    }
    return 0.0;
}

std::string Signal::describe() const {
    auto tail = [&] { return base_ != 0.0 ? " " + num(base_) : std::string{}; };
    switch (shape_) {
        case Shape::constant: return "const " + num(base_);
        case Shape::step: return "step " + num(t0_) + " " + num(magnitude_) + tail();
        case Shape::ramp: return "ramp " + num(t0_) + " " + num(t1_) + " " + num(magnitude_) + tail();
        case Shape::pulse: return "pulse " + num(t0_) + " " + num(t1_) + " " + num(magnitude_) + tail();
        case Shape::samples: {
            std::string out = "samples";
            for (std::size_t i = 0; i < times_.size(); ++i) out += " " + num(times_[i]) + " " + num(values_[i]);
            return out;
        }
    }
    return {};
}

Signal parse_signal(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string kind;
    in >> kind;
    std::vector<double> args;
    for (std::string word; in >> word;) {
        double v = 0.0;
        const auto res = std::from_chars(word.data(), word.data() + word.size(), v);
        if (res.ec != std::errc{} || res.ptr != word.data() + word.size()) {
            throw SignalError("'" + word + "' is not a number");
        }
        args.push_back(v);
    }
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi) {
            throw SignalError("'" + kind + "' takes " + std::to_string(lo) +
                              (lo == hi ? "" : "-" + std::to_string(hi)) + " numbers, got " +
                              std::to_string(args.size()));
        }
    };
    if (kind == "const") {
        arity(1, 1);
        return Signal::constant(args[0]);
    }
    if (kind == "step") {
        arity(2, 3);
        return Signal::step(args[0], args[1], args.size() > 2 ? args[2] : 0.0);
    }
    if (kind == "ramp" || kind == "pulse") {
        arity(3, 4);
        const double base = args.size() > 3 ? args[3] : 0.0;
        return kind == "ramp" ? Signal::ramp(args[0], args[1], args[2], base)
                              : Signal::pulse(args[0], args[1], args[2], base);
    }
    if (kind == "samples") {
        if (args.empty() || args.size() % 2 != 0) throw SignalError("samples takes time/value pairs");
        std::vector<double> t, v;
        for (std::size_t i = 0; i < args.size(); i += 2) {
            t.push_back(args[i]);
            v.push_back(args[i + 1]);
        }
        return Signal::samples(std::move(t), std::move(v));
    }
    throw SignalError("unknown signal kind '" + kind + "' (const, step, ramp, pulse, samples)");
}

void check_fault_signal(const FaultSignal& fault) {
    using Shape = Signal::Shape;
    const Shape s = fault.signal.shape();
    if (s != Shape::step && s != Shape::ramp && s != Shape::samples) {
        throw SignalError("fault '" + fault.fault + "' must be a step, ramp or samples signal");
    }
    if (fault.signal.onset() < 0) throw SignalError("fault '" + fault.fault + "' has negative onset");
}

}  // namespace sadiag::hydrosim
