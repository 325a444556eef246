// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace irshare {

using cplx = std::complex<double>;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }

double norm(const Vec3& v);
double distance(const Vec3& a, const Vec3& b);

// Dense row-major complex matrix. Used both for phase-shift plans
// (rows = time slots, cols = surface elements, unit-modulus entries)
// and for gradients of the same shape.
struct CMat {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> v;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * c) {}

    cplx& operator()(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
    const cplx& operator()(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }

    const cplx* row(int r) const { return v.data() + static_cast<size_t>(r) * cols; }
    cplx* row(int r) { return v.data() + static_cast<size_t>(r) * cols; }

    size_t size() const { return v.size(); }
};

// K x M reflection-coefficient matrix, one row per time slot of the
// control interval. Entries are unit modulus (within 1e-12 after
// projection, 1e-9 anywhere an evaluation accepts one).
using PhasePlan = CMat;

// Active slot indices for one user, each in [0, K).
using SlotSet = std::vector<int>;

// One slot set per user.
using SlotAllocation = std::vector<SlotSet>;

SlotSet all_slots(int n_slots);
SlotAllocation full_activity(int n_users, int n_slots);

}  // namespace irshare
