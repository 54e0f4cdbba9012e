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

#ifndef MODXL_MODXL_HPP
#define MODXL_MODXL_HPP

#include "errors.hpp"
#include "geometry.hpp"
#include "channel.hpp"
#include "beamforming.hpp"
#include "quadrature.hpp"
#include "summation.hpp"
#include "snr_models.hpp"
#include "sweep.hpp"
#include "csv.hpp"
#include "svg.hpp"
#include "verify.hpp"

#endif
