//! The embedded corpus of small extremal matrices with their optimal covers
//! and deficiencies, plus the auxiliary instances used by the regression and
//! search suites. Every file is locked by a content checksum; the loader
//! re-verifies the checksums so a silent edit of the corpus cannot pass
//! unnoticed. The printed deficiencies are re-derived by the solvers in the
//! verification gate.

use sha2::{Digest, Sha256};

use crate::covers::CoverTable;
use crate::rat::{parse_rat, Rat};
use crate::tensor::BinaryTensor;
use crate::{Error, Result};

/// One corpus entry: an extremal matrix, its unique optimal cover, and its
/// deficiency.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub tensor: BinaryTensor,
    pub cover: CoverTable,
    pub deficiency: Rat,
}

/// The full corpus.
#[derive(Clone, Debug)]
pub struct FixtureSet {
    /// The catalogued extremal matrices: one 3-dim of order 2, one 4-dim of
    /// order 2, three 5-dim of order 2, two 3-dim of order 3, eighteen 3-dim
    /// of order 4.
    pub core: Vec<Fixture>,
    /// The order-5 host matrix of the non-reversibility example, with its
    /// optimal cover.
    pub b_order5: Fixture,
    /// The reduced 3×4 table whose induced matrix is not extremal yet sits
    /// strictly inside [`FixtureSet::order4_host`].
    pub reduced_cover: CoverTable,
    /// The 6-dimensional antipodal matrix of order 2 that contains a
    /// polydiagonal.
    pub six_dim: BinaryTensor,
}

impl FixtureSet {
    /// The order-4 extremal matrix hosting the induced matrix of
    /// [`FixtureSet::reduced_cover`].
    pub fn order4_host(&self) -> &Fixture {
        self.core
            .iter()
            .find(|f| f.name == ORDER4_HOST_NAME)
            .expect("registry holds the host")
    }
}

struct Entry {
    name: &'static str,
    delta: &'static str,
    tensor: &'static str,
    tensor_sha: &'static str,
    cover: &'static str,
    cover_sha: &'static str,
}

const ORDER4_HOST_NAME: &str = "d3_n4_o";

macro_rules! entry {
    ($name:literal, $delta:literal, $tsha:literal, $csha:literal) => {
        Entry {
            name: $name,
            delta: $delta,
            tensor: include_str!(concat!("../fixtures/", $name, ".tensor")),
            tensor_sha: $tsha,
            cover: include_str!(concat!("../fixtures/", $name, ".cover")),
            cover_sha: $csha,
        }
    };
}

const CORE: &[Entry] = &[
    entry!(
        "d3_n2",
        "1/2",
        "26a872b1913b1723b52b9319d3ae27ed8f05414bb2d0cdc1b0916f7338d0a25e",
        "e92626bdcd998d536827b0524ea53100323371f4d629b12c9b356f0b6d339a9a"
    ),
    entry!(
        "d4_n2",
        "1/3",
        "277195db5a2b59a457b3d5c59f87f9ecf27be73bd1776403d3798a8444a5aef4",
        "b05f539e9b1abc889983d6c3b46c466a6d7d001a4dc9dd6b206b372a4bacf35b"
    ),
    entry!(
        "d5_n2_a",
        "1/4",
        "b9800bf29cbcd4e35590c32c92861c00cd7a1c0ec6deec02127a250c64a9998f",
        "c87cb5fd9881d9316861afe0f74679cc59a5a9efb6e56fbe69518ce040f25ea1"
    ),
    entry!(
        "d5_n2_b",
        "1/4",
        "e90ba5885e6958c30f13b4093db77caae982c061090341758dfa03365d15b2ec",
        "819d2a03bbf0aa1c01dc0c6df7d1a14df8b310448655d28f380f64af69b7c7c2"
    ),
    entry!(
        "d5_n2_c",
        "1/5",
        "865085626a1d0affb9641aa184274c38e54d00172d621e99610fe3dc59dcf5ae",
        "6853239fe93d4a70d594c576b59bccccc6bef36e1591d4c43c1e493af17bac64"
    ),
    entry!(
        "d3_n3_a",
        "1/3",
        "deea92cf3afd7bffbbb1aaeda70c8319be5d1dd515105d55ec1e9609869bc788",
        "ed9a73088064f1d8b418421f0f064664fbb2dc581d46ff109c7bfc591fe77439"
    ),
    entry!(
        "d3_n3_b",
        "1/4",
        "587103f1ef84132e180234152318532604d4270816e8fd7f66849f3e056a0958",
        "217e71d05fe2c16f2f9041dd4621075f3105db5552aa8d6ac4aaf3eaa6df2740"
    ),
    entry!(
        "d3_n4_a",
        "1/4",
        "7904a0256e116d7e1a9e298067e8d3c7cfa2003fbd911a6781f29f6317443e03",
        "7bf25fadf843c96e3ab4019e135fbb04ff54a657cc571877b748bc44ce71d7ca"
    ),
    entry!(
        "d3_n4_b",
        "1/4",
        "b533298261248ef2be23db41986291b9d761e402831bbb4fdf77f98bf5d8ed03",
        "5f9e4ca2df80ccdfeffe3edaec2d06f0f74309150aa62cca4ae3c8a54c7d53c1"
    ),
    entry!(
        "d3_n4_c",
        "1/4",
        "ef1f7e5e5ada6d6e6a3ce82c03d1927dc487e76d583584198833e50d79150107",
        "74e6b34212595fddf30cdc9b6ce95139e0656dd35a70a15e30cbc8e9d38acbff"
    ),
    entry!(
        "d3_n4_d",
        "1/5",
        "b72e10599a7c80ee022b187e048b15c4ff89d79ca285cc8c5ce7d6161f00412f",
        "0f310dfde835d9f4b1cef144fddfd38377e850c60ec5daca00e80764ed7f99f8"
    ),
    entry!(
        "d3_n4_e",
        "1/5",
        "47d826db0a4b812d2c04b7c1716ef3d5d8c7d9a18efee9652daaf5a5209fb79a",
        "593eaf54cdde43d9b7c3e8ee03703337a02d99886a2e9338a44f7ec4ba45afdd"
    ),
    entry!(
        "d3_n4_f",
        "1/5",
        "5e1d23245877ba22ec8233354c2a6b4ad5bba2f60e399d831c7bfe0489948fae",
        "fed21eb8762f7370c8922fd84e64690a337a6510cd604e5b4dc67c36153db9cb"
    ),
    entry!(
        "d3_n4_g",
        "1/5",
        "35717bf4d1f483d99917a299ec3a2a7b09e324e12cfac0468dfae264fab6b054",
        "02ef352e91889595016a6022369a627ba7bbdc7a055b8755a26bebdc4c3e06d5"
    ),
    entry!(
        "d3_n4_h",
        "1/5",
        "899c71081aaddc9bfc7642dad0705065de2e7cc9f64f73eb36d253efa04a29c0",
        "ba445f1aca07063af96ec9040f4ba0ea48fa37c13b522c73ced9b9a364f25023"
    ),
    entry!(
        "d3_n4_i",
        "1/6",
        "2628365619f6c3ef4d978faa59da25487241c91f008a1c8e4d5fbc4063f22c0d",
        "5a00c9359376b3614e97173ccc8e7dab47f74e3ce0049aa0015b7d7edf10eb3d"
    ),
    entry!(
        "d3_n4_j",
        "1/6",
        "9ae287c39ce10cdb1ba7bb8faa6177433b3d738a2d4293098332e22a8718abb3",
        "22023461fdb4ae402e357011985f0b7da40f45f4de59bb35772019c48aa50c81"
    ),
    entry!(
        "d3_n4_k",
        "1/6",
        "e7b5b8d72b4df501378fd3b84b47825902185d60db4d6721a7a6031435c104fd",
        "912b7573d52d53e572197e32ec00ff640f861e9236e2da969d88cf533b9def56"
    ),
    entry!(
        "d3_n4_l",
        "1/6",
        "90ad5957076f5c88a2bb8d02fd23b141c5db13033c42cb1d5852e0f0fa067139",
        "016514d9c4afa4a1377013e54062f0885082348225e691f1d393edf0d7f58e11"
    ),
    entry!(
        "d3_n4_m",
        "1/6",
        "eccadecf7fff9cac9433629576aae7a6bdd3a11e1a412f8b869279754b0a5983",
        "1da224034a5e681371f994bae07b9ab306ab125fa80ec7b68449ce8dc8c53cf2"
    ),
    entry!(
        "d3_n4_n",
        "1/7",
        "4f0635019d70bf334da31b7893e125c26e0a45b9000e71b0c5fe92cf8aa76336",
        "936e26fbf7fed17e99450e922b748a486ef6e8221adf532c893252104236315a"
    ),
    entry!(
        "d3_n4_o",
        "1/7",
        "ec702c3f28e17e2f911adfc4d92244dc172993a7d50966f6745c36765d7ec3d0",
        "d8eeda33e0912ca83817ad7256f910d2d7cbe4ad198222f55607c89f46c3d2f4"
    ),
    entry!(
        "d3_n4_p",
        "1/8",
        "f25d5b6ef33684e93044481040a108de07fa80478da536a775b079e622d81320",
        "614df59cc71cca24f1484e366092b049a04f35e81d142e5affa3e0ecfca51609"
    ),
    entry!(
        "d3_n4_q",
        "1/8",
        "c42fa94f3ab9092d27009017f849237ba4eb502525eb2e68d68ff65b1c33cba9",
        "6247f4b330d88c8a46378633b90e3d6a0a5044e1949d6cddd20714afca55c0e7"
    ),
    entry!(
        "d3_n4_r",
        "1/8",
        "01694388de151f68c2d2ec7b997e96bbdaf84c181bc73af3ffdefcb77a771c7e",
        "eb1ac500858105d392e50ad4263636fb49b99a5ca1b6bc296f380c90caf57c63"
    ),
];

const B_ORDER5: Entry = entry!(
    "b_d3_n5",
    "1/5",
    "9c4106490c4c718cd08caf0db0436952e6bd0918061176e8595778ab70072639",
    "3a854d828b7a38a8ce16fc9785fc458fea2583e0fec88a6a62e3b2cc24d29aab"
);

const REDUCED_COVER: &str = include_str!("../fixtures/reduced_d3_n4.cover");
const REDUCED_COVER_SHA: &str =
    "9895af60bccd10372fac90dc511092fa0e38dd317ff43ba683384b0ee52cbed6";

const SIX_DIM: &str = include_str!("../fixtures/six_dim_n2.tensor");
const SIX_DIM_SHA: &str = "4b5871825ab3a871046cee276260ed6b57a797a3745c548b7f37cbf401f0f32c";

fn checked(name: &str, file: &str, text: &str, sha: &str) -> Result<()> {
    let digest = Sha256::digest(text.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    if hex != sha {
        return Err(Error::ChecksumMismatch {
            name: name.to_string(),
            file: file.to_string(),
        });
    }
    Ok(())
}

fn load_entry(e: &Entry) -> Result<Fixture> {
    checked(e.name, "tensor", e.tensor, e.tensor_sha)?;
    checked(e.name, "cover", e.cover, e.cover_sha)?;
    Ok(Fixture {
        name: e.name,
        tensor: BinaryTensor::parse_text(e.tensor)?,
        cover: CoverTable::parse_text(e.cover)?,
        deficiency: parse_rat(e.delta, 0)?,
    })
}

/// Loads the whole corpus, verifying every checksum.
pub fn load_fixtures() -> Result<FixtureSet> {
    let core = CORE.iter().map(load_entry).collect::<Result<Vec<_>>>()?;
    let b_order5 = load_entry(&B_ORDER5)?;
    checked("reduced_d3_n4", "cover", REDUCED_COVER, REDUCED_COVER_SHA)?;
    checked("six_dim_n2", "tensor", SIX_DIM, SIX_DIM_SHA)?;
    Ok(FixtureSet {
        core,
        b_order5,
        reduced_cover: CoverTable::parse_text(REDUCED_COVER)?,
        six_dim: BinaryTensor::parse_text(SIX_DIM)?,
    })
}
