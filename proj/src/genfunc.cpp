#include "tlb/genfunc.hpp"

#include <stdexcept>

namespace tlb {

Series series_f(int order) {
    Series f = Series::one(order);
    for (int it = 0; it <= order; ++it) {
        Series next = Series::one(order) + (f * f).shift(1);
        if (next == f)
            break;
        f = next;
    }
    return f;
}

Series series_f_closed(int order) {
    Series f(order);
    for (int j = 0; j <= order; ++j)
        f.coeff_mut(j) = binom(2 * j, j) / (j + 1);
    return f;
}

Series series_e(int order) {
    Series f = series_f(order);
    Series e = Series::one(order);
    for (int it = 0; it <= order; ++it) {
        Series next = Series::one(order) + (f * e).shift(1).scaled(2);
        if (next == e)
            break;
        e = next;
    }
    return e;
}

Series series_e_closed(int order) {
    Series e(order);
    for (int j = 0; j <= order; ++j)
        e.coeff_mut(j) = binom(2 * j, j);
    return e;
}

Series series_f_dilute(int order) {
    Series m = Series::one(order);
    for (int it = 0; it <= 2 * order; ++it) {
        Series next = Series::one(order) + m.shift(1) + (m * m).shift(2);
        if (next == m)
            break;
        m = next;
    }
    return m;
}

Series series_f_dilute_closed(int order) {
    // Motzkin recurrence M_j = M_{j-1} + sum_i M_i M_{j-2-i}.
    Series m(order);
    m.coeff_mut(0) = 1;
    for (int j = 1; j <= order; ++j) {
        Int v = m.coeff(j - 1);
        for (int i = 0; i <= j - 2; ++i)
            v += m.coeff(i) * m.coeff(j - 2 - i);
        m.coeff_mut(j) = v;
    }
    return m;
}

namespace {

Series geometric4(int order) { // 1/(1-4z)
    Series s(order);
    Int p = 1;
    for (int j = 0; j <= order; ++j) {
        s.coeff_mut(j) = p;
        p *= 4;
    }
    return s;
}

} // namespace

Series e_family_series(EFamily fam, int k, bool nb_nonzero, int order) {
    if (k < 0)
        throw std::invalid_argument("e_family_series: negative k");
    Series f = series_f(order);
    Series e = series_e(order);
    Series ef1 = Series::one(order) + (e * f).shift(1); // 1 + z e f
    switch (fam) {
    case EFamily::Z0:
        return f.pow(unsigned(2 * k + 1)).shift(k);
    case EFamily::O1:
        return (e * f.pow(unsigned(2 * k))).shift(k);
    case EFamily::O2:
        return (e * f.pow(unsigned(2 * k + 1))).shift(k + 1);
    case EFamily::O3:
        return (f.pow(unsigned(2 * k)) * ef1).shift(k);
    case EFamily::T1:
        if (k == 0)
            return nb_nonzero ? geometric4(order) : e + (f * e * e).shift(1); // e^2/f
        return (e * e * f.pow(unsigned(2 * k - 1))).shift(k);
    case EFamily::T2:
        if (k == 0 && nb_nonzero)
            return geometric4(order).shift(1).scaled(2);
        return (e * e * f.pow(unsigned(2 * k))).shift(k + 1);
    case EFamily::T3:
        if (k == 0 && nb_nonzero)
            return geometric4(order).shift(1);
        return (e * e * f.pow(unsigned(2 * k + 1))).shift(k + 2);
    case EFamily::T4:
        if (k == 0)
            throw std::invalid_argument("T4 needs k >= 1");
        return (e * f.pow(unsigned(2 * k - 1)) * ef1).shift(k);
    case EFamily::T5:
        if (k == 0)
            throw std::invalid_argument("T5 needs k >= 1");
        return (e * f.pow(unsigned(2 * k)) * ef1).shift(k + 1);
    case EFamily::T6:
        if (k == 0)
            throw std::invalid_argument("T6 needs k >= 1");
        return (f.pow(unsigned(2 * k - 1)) * ef1 * ef1).shift(k);
    }
    throw std::logic_error("unreachable");
}

Int e_coefficient(EFamily fam, int j, int k, bool nb_nonzero) {
    if (j < 0)
        return 0;
    return e_family_series(fam, k, nb_nonzero, j).coeff(j);
}

EFamily e_family_for(const BoundaryMode& mode, const SectorLabel& sector) {
    switch (mode.kind) {
    case BKind::ZeroB:
        return EFamily::Z0;
    case BKind::OneB:
        if (mode.lambda_l)
            return EFamily::O1; // both sectors have the same count
        return sector.left == Blob::B && sector.L > 0 ? EFamily::O3 : EFamily::O2;
    case BKind::TwoB: {
        bool al = sector.L > 0 && sector.left == Blob::B;
        bool ar = sector.L > 0 && sector.right == Blob::B;
        if (mode.lambda_l && mode.lambda_r)
            return EFamily::T1;
        if (mode.lambda_l && !mode.lambda_r) // gamma delta = ub
            return ar ? EFamily::T4 : EFamily::T2;
        if (!mode.lambda_l && mode.lambda_r) // gamma delta = bu
            return al ? EFamily::T4 : EFamily::T2;
        // restricted: gamma delta = bb
        if (al && ar)
            return EFamily::T6;
        if (al || ar)
            return EFamily::T5;
        return EFamily::T3;
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace tlb
