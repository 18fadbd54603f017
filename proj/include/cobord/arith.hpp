#pragma once

// Exact arithmetic substrate: arbitrary-precision integers and rationals
// (GMP), with parsing/printing helpers shared by the whole library.

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>

namespace cobord {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WeightOverflowError : Error {
    using Error::Error;
};

struct IncompatibleError : Error {
    using Error::Error;
};

struct NotSymmetricError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::string rat_to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_str();
}

// Accepts "3", "-3", "1/2", "-1/2" and the unicode minus sign U+2212.
inline Rat rat_from_string(std::string s) {
    std::string t;
    for (std::size_t i = 0; i < s.size();) {
        // U+2212 encodes as 0xE2 0x88 0x92
        if (i + 2 < s.size() && (unsigned char)s[i] == 0xE2 &&
            (unsigned char)s[i + 1] == 0x88 && (unsigned char)s[i + 2] == 0x92) {
            t += '-';
            i += 3;
        } else if (!std::isspace((unsigned char)s[i])) {
            t += s[i++];
        } else {
            ++i;
        }
    }
    if (t.empty()) throw ParseError("empty rational literal");
    for (char c : t)
        if (!(std::isdigit((unsigned char)c) || c == '-' || c == '+' || c == '/'))
            throw ParseError("bad rational literal: " + s);
    Rat q;
    if (q.set_str(t, 10) != 0) throw ParseError("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline Int factorial(long n) {
    Int r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

// Generalized binomial coefficient: m may be negative,
// binom(m, k) = m (m-1) ... (m-k+1) / k!.
inline Rat binomial(long m, long k) {
    if (k < 0) return Rat(0);
    Rat num = 1;
    for (long i = 0; i < k; ++i) num *= Rat(m - i);
    Rat r = num / Rat(factorial(k));
    r.canonicalize();
    return r;
}

}  // namespace cobord
