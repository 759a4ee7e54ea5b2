#pragma once

#include <string>

#include "latbab/errors.hpp"
#include "latbab/linalg.hpp"
#include "latbab/rng.hpp"

namespace latbab {

// Observation model for the sensors: product-uniform over [-A/2, A/2)^n, or
// a lattice point plus isotropic Gaussian noise (the lattice point is taken
// as 0; the protocol and the error events are lattice-equivariant).
struct SourceSpec {
    enum class Kind { Uniform, Gaussian };
    Kind kind = Kind::Uniform;
    double a = 5.0;
    double sigma = 0.1;

    static SourceSpec uniform(double width) { return {Kind::Uniform, width, 0.0}; }
    static SourceSpec gaussian(double s) { return {Kind::Gaussian, 0.0, s}; }

    // "uniform:A=5" or "gauss:sigma=0.25".
    static SourceSpec parse(const std::string& text) {
        auto colon = text.find(':');
        std::string head = text.substr(0, colon);
        std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
        if (head == "uniform") {
            double width = 5.0;
            if (!args.empty()) {
                if (args.rfind("A=", 0) != 0)
                    throw ParseError("source spec: expected uniform:A=<width>");
                width = std::stod(args.substr(2));
            }
            if (width <= 0) throw ParseError("source spec: width must be > 0");
            return uniform(width);
        }
        if (head == "gauss" || head == "gaussian") {
            if (args.rfind("sigma=", 0) != 0)
                throw ParseError("source spec: expected gauss:sigma=<s>");
            double s = std::stod(args.substr(6));
            if (s <= 0) throw ParseError("source spec: sigma must be > 0");
            return gaussian(s);
        }
        throw ParseError("source spec: unknown kind '" + head + "'");
    }

    std::string str() const {
        return kind == Kind::Uniform ? "uniform:A=" + std::to_string(a)
                                     : "gauss:sigma=" + std::to_string(sigma);
    }

    Vec sample(Rng& rng, std::size_t n) const {
        Vec x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = kind == Kind::Uniform ? rng.uniform(-a / 2.0, a / 2.0) : rng.normal(sigma);
        return x;
    }
};

}  // namespace latbab
