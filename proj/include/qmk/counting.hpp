#pragma once

namespace qmk {

// Arithmetic-cost record. mul counts multiplications, add counts two-input
// additions (a subtraction is one addition), neg counts pure sign changes
// and is informational only.
struct OpTally {
    long mul = 0;
    long add = 0;
    long neg = 0;

    friend bool operator==(const OpTally&, const OpTally&) = default;
};

// Scalar that tallies operations instead of computing values. A scalar made
// by constant() carries no tally, so embedding plan constants is free; any
// operation touching at least one tallied operand is recorded. Since the
// kernels are straight-line code, the resulting counts are independent of
// input values.
class CountScalar {
public:
    CountScalar() = default;
    explicit CountScalar(OpTally& tally) : tally_(&tally) {}

    static CountScalar constant() { return CountScalar{}; }

    friend CountScalar operator+(CountScalar a, CountScalar b) {
        return a.combine(b, &OpTally::add);
    }
    friend CountScalar operator-(CountScalar a, CountScalar b) {
        return a.combine(b, &OpTally::add); // subtraction costs one addition
    }
    friend CountScalar operator*(CountScalar a, CountScalar b) {
        return a.combine(b, &OpTally::mul);
    }
    friend CountScalar operator-(CountScalar a) {
        if (a.tally_) a.tally_->neg++;
        return a;
    }

private:
    CountScalar combine(CountScalar other, long OpTally::*counter) const {
        OpTally* t = tally_ ? tally_ : other.tally_;
        if (t) (t->*counter)++;
        CountScalar r;
        r.tally_ = t;
        return r;
    }

    OpTally* tally_ = nullptr;
};

} // namespace qmk
