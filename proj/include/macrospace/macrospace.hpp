// Copyright 2026 The Macrospace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "macrospace/certificate.hpp"
#include "macrospace/clique_cover.hpp"
#include "macrospace/components.hpp"
#include "macrospace/constructions.hpp"
#include "macrospace/covers.hpp"
#include "macrospace/distance.hpp"
#include "macrospace/error.hpp"
#include "macrospace/io.hpp"
#include "macrospace/isometry.hpp"
#include "macrospace/metric_space.hpp"
#include "macrospace/multimap.hpp"
#include "macrospace/tower.hpp"
#include "macrospace/tower_morphism.hpp"
