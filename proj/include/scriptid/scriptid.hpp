#pragma once

#include "scriptid/contour.hpp"
#include "scriptid/corpus.hpp"
#include "scriptid/dataset.hpp"
#include "scriptid/dft.hpp"
#include "scriptid/error.hpp"
#include "scriptid/feature_csv.hpp"
#include "scriptid/feature_vector.hpp"
#include "scriptid/filter.hpp"
#include "scriptid/image.hpp"
#include "scriptid/image_io.hpp"
#include "scriptid/knn.hpp"
#include "scriptid/metrics.hpp"
#include "scriptid/model.hpp"
#include "scriptid/naive_bayes.hpp"
#include "scriptid/spectral.hpp"
#include "scriptid/standardize.hpp"
#include "scriptid/svm.hpp"
#include "scriptid/synth.hpp"
#include "scriptid/threshold.hpp"
