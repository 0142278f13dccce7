/*
 * Copyright 2026 the cloudchem authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "cloudchem/constants.hpp"
#include "cloudchem/density.hpp"
#include "cloudchem/dft.hpp"
#include "cloudchem/electrostatics.hpp"
#include "cloudchem/errors.hpp"
#include "cloudchem/hartree_fock.hpp"
#include "cloudchem/integrals.hpp"
#include "cloudchem/io.hpp"
#include "cloudchem/parallel.hpp"
#include "cloudchem/quadrature.hpp"
#include "cloudchem/reports.hpp"
#include "cloudchem/system.hpp"
