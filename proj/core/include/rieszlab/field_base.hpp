#pragma once

#include <memory>
#include <vector>

#include "rieszlab/multi_index.hpp"

namespace rieszlab {

/// Closed-form vector field on R^N with analytic derivatives up to a
/// declared order. Implementations must be immutable after construction.
class FieldBase {
public:
    virtual ~FieldBase() = default;

    virtual int dim() const = 0;
    virtual int fiber() const = 0;
    /// Highest derivative order available analytically.
    virtual int max_derivative_order() const = 0;

    virtual std::vector<double> value(const std::vector<double>& x) const = 0;
    /// d^gamma of each component; gamma = 0 gives the value.
    virtual std::vector<double> derivative(const MultiIndex& gamma,
                                           const std::vector<double>& x) const = 0;

    virtual bool compact_support() const = 0;
    /// Radius of a ball around the origin containing the support
    /// (or the effective support for Schwartz-type decay).
    virtual double support_radius() const = 0;
};

using Field = std::shared_ptr<const FieldBase>;

}  // namespace rieszlab
