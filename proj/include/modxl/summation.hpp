// SPDX-License-Identifier: Apache-2.0
//
// modxl - near-field modelling toolkit for modular extremely large-scale arrays
// Copyright (C) 2026 The modxl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MODXL_SUMMATION_HPP
#define MODXL_SUMMATION_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace modxl
{
    // Kahan-Babuska (Neumaier) compensated accumulator
    class compensated_sum
    {
    public:
        void add(double x) noexcept
        {
            const double t = sum_ + x;
            if (std::abs(sum_) >= std::abs(x))
                comp_ += (sum_ - t) + x;
            else
                comp_ += (x - t) + sum_;
            sum_ = t;
        }

        compensated_sum &operator+=(double x) noexcept
        {
            add(x);
            return *this;
        }

        void merge(const compensated_sum &o) noexcept
        {
            add(o.sum_);
            add(o.comp_);
        }

        double value() const noexcept { return sum_ + comp_; }

    private:
        double sum_ = 0.0;
        double comp_ = 0.0;
    };

    // Runs body(chunk) for chunk in [0, chunk_count) on up to `threads` workers.
    // Work assignment is dynamic; callers write to per-chunk slots so results do not
    // depend on the schedule. The first exception thrown by any chunk is rethrown.
    template <class Body>
    void parallel_chunks(std::size_t chunk_count, unsigned threads, Body &&body)
    {
        threads = std::max(1u, threads);
        if (threads == 1 || chunk_count <= 1)
        {
            for (std::size_t c = 0; c < chunk_count; ++c)
                body(c);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;)
            {
                const std::size_t c = next.fetch_add(1);
                if (c >= chunk_count)
                    return;
                try
                {
                    body(c);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(chunk_count);
                }
            }
        };

        const unsigned n_workers = unsigned(std::min<std::size_t>(threads, chunk_count));
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned t = 0; t < n_workers; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }
}

#endif
