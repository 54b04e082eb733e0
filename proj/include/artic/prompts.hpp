#pragma once

// Prompt templates sent to the vision oracle, plus the substitution logic that
// instantiates them per request.  Template text is load-bearing: downstream
// reply parsing assumes the exact answer formats requested here, and the golden
// tests pin every byte.  Do not reflow or "fix" the wording.

#include <stdexcept>
#include <string>
#include <vector>

namespace artic::prompts {
inline constexpr const char* kPartListSystem = R"TMPL(You have a good understanding of the structure of articulated objects. Your job is to assist the user to analyze the structure of an object. Specifically, the user will give you an image of an articulated object, and your task is to recognize the main parts of that object. You should give your answer in the following format:

```part_list
(1) part_name: name of the part; description: a brief description about the part, and how it moves
(2) part_name: name of the part; description: a brief description about the part, and how it moves
...

```

Remember:
(1) Do not answer anything not asked.
(2) Your answer should be purely based on the input image, do not imagine anything.
(3) If there are multiple parts with the same semantic, just add one part to the list. For example, if there are four wheels, just add one part whose name is wheel.)TMPL";
inline constexpr const char* kTreeSystem = R"TMPL(You have a good understanding of the structure of articulated objects. You are very familiar with URDF format. Your job is to assist the user to analyze the structure of an articulated object. Specifically, the user will name an object and then give you the main parts of that object. You will have to group these parts into links and then give the joints connecting these links. You should give your answer in the following format:

```articulation tree
parts:
(1) part_name: name of the recognized part;
...

links:
(1) link_name: name of the link;
...

joints:
(1) joint_name: name of the joint; joint_type: type of the joint; parent_link: name of the parent link; child_link: name of the child link; joint_limit: [lower limit, upper limit];
...
```

For example:
```articulation tree
parts:
(1) part_name: Front windshield;
(2) part_name: Doors;
(3) part_name: Headlights;
(4) part_name: Wheels;
(5) part_name: Windows;

links:
(1) link_name: Chasis;
(2) link_name: Doors;
(3) link_name: Wheels;
(4) link_name: Windows;

joints:
(1) joint_name: wheel_chasis_joint; joint_type: continuous; parent_link: Chasis ; child_link: Wheels; joint_limit: None;
(2) joint_name: door_chasis_joint; joint_type: revolute; parent_link: Chasis ; child_link: Doors; joint_limit: [0, 90];
(3) joint_name: door_chasis_joint; joint_type: prismatic; parent_link: Chasis ; child_link: Windows; joint_limit: [0, 1];

```

Remember:
(1) Do not answer anything not asked.
(2) If a part is actually movable in any direction, its joint type is floating.
(3) Available joint types are: fixed, prismatic, revolute, continuous and floating.
(4) For joint_type, only answer one word (among the available types), do not answer anything else.
(5) For every part that is not fixed, there must be a unique link for it.
(6) For parts that are fixed, try to group as many as you can.
(7) Joint limit must be given for prismatic joints and revolute joints. The unit of a revolute joint limit is degrees. The unit of a prismatic joint limit is the size of its child link in its translation direction. The joint limit should be two numbers.)TMPL";
inline constexpr const char* kTreeUser = R"TMPL(Object: OBJECT_NAME
Parts: RECOGNIZED_PARTS)TMPL";
inline constexpr const char* kTopologySystem = R"TMPL(You are an assistant with a deep understanding of the structure of objects. Your task is to help users determine the hinge position of some parts of a given object mesh using common sense. It is important to note that the object is represented by a mesh, so you only have access to the object's surface and no access to its inner structure. The term "hinge" here does not only refer to the mechanical structure of a hinge, but also has a broader meaning. For example, the connection between a cardboard box lid and the body of the box is also considered a hinge.

Specifically, the user will provide you with an object, and the part for which the hinge position needs to be predicted will be specified. You will have to decide whether (1) both ends of the hinge are positioned on the surface of the object or (2) only one end of the hinge is positioned near the surface of the object, and the other end is inside the object.

For example, the hinge of a door has both its ends positioned on the door frame, which is recognizable and falls into the first category. The hinge of a wheel has one end recognizable on the center of the wheel, and its other end hidden inside the car (normally an object mesh of a car will not have detailed mechanical structures), which falls into the second category.

Please give your answer in the following format:
```hinge_info
description: a brief description of the hinge
choice: (1) or (2)
```)TMPL";
inline constexpr const char* kHingePointsTwoUser = R"TMPL(You are an assistant with a deep understanding of the structure of objects. Your task is to answer some questions about the input image of an object. The input image is of a {object_name}. The image has some points marked, each with an numerical ID as a label. Please select the points that are on the rotation axis of the {part_name} of the {object_name}. Give your answer in the following format:

```hinge points
description: a brief description of the location of the rotation axis and the selected points
selected IDs: ID of selected point1, ID of selected point2, ... (for example 1,3)
```

Remember: 
(1) Do not answer anything not asked for.
(2) Select two or more points.
(3) Give your answer based on the provided image.)TMPL";
inline constexpr const char* kHingePointsOneUser = R"TMPL(You are an assistant with a deep understanding of the structure of objects. Your task is to answer some questions about the input image of an object. The input image is of a {object_name}. The image has some points marked, each with an numerical ID as a label. Please select the point that is on the rotation axis of the {part_name} of the {object_name}. Give your answer in the following format:

```hinge points
description: a brief description of the location of the rotation axis and the selected points
selected IDs: ID of the selected point
```

Remember: 
(1) Do not answer anything not asked for.
(2) Only select one point that is the most suitable.
(3) Give your answer based on the provided image.)TMPL";
inline constexpr const char* kPrismaticSystem = R"TMPL(You are an assistant with a deep understanding of the structure of objects. Your task is to help users to determine the translation direction of some parts of a given object mesh using common sense. It is important to note that the object is represented by a mesh, so you only have access to the object's surface and no access to its inner structure.

Specifically, the user will provide you with an object and the part for which the translation direction needs to be predicted will be specified. You will have to decide whether the translation direction is outwards from/inwards towards the mesh, or along the surface of the mesh.

When a part moves outwards, you will see more of that part coming out from the object. When a part moves inwards, you will see portions of that part going into the object. When a part moves along the surface of an object, you still see the exact same part. 

For example, a pressing button can be pressed inwards (when you press it, the button goes into the object), the telescopic handle of a suitcase can be pulled outwards (when you pull it, the entire handle comes out of the suitcase), and a stick shift moves along the surface of a shift pattern (when you are shifting, the shift does not go into the transmission or out of the transmission).

Please give your answer in the following format:
```translation_axis_info
description: a brief description of the translation axis
choice: outward/inward or surface
```)TMPL";
inline constexpr const char* kSlidingArrowUser = R"TMPL(You are an assistant with a deep understanding of the structure of objects. Your task is to answer some questions about the input image of an object. The input image is of a {object_name}. The image has some arrows marked, each with a different color. Please select the arrow that indicate the translation direction of the {part_name} of the {object_name}. Give your answer in the following format:

```sliding direction
description: a brief description of the direction of the sliding axis and the selected arrow
selected arrow: color of the arrow (in red, yellow, blue, green)
```

Remember: 
(1) Do not answer anything not asked for.
(2) Select one arrow.)TMPL";

enum class Purpose {
  PartList,
  ArticulationTree,
  HingeTopology,
  HingePointsTwo,   // both hinge ends on the surface: select two or more points
  HingePointsOne,   // one end hidden inside the body: select exactly one point
  PrismaticClass,
  SlidingArrow,
};

inline const char* purpose_name(Purpose p) {
  switch (p) {
    case Purpose::PartList: return "part_list";
    case Purpose::ArticulationTree: return "articulation_tree";
    case Purpose::HingeTopology: return "hinge_topology";
    case Purpose::HingePointsTwo: return "hinge_points_two";
    case Purpose::HingePointsOne: return "hinge_points_one";
    case Purpose::PrismaticClass: return "prismatic_class";
    case Purpose::SlidingArrow: return "sliding_arrow";
  }
  return "unknown";
}

struct PromptContext {
  std::string object_name;
  std::string part_name;
  std::vector<std::string> part_names;  // ArticulationTree only
};

struct PromptText {
  std::string system_text;
  std::string user_text;
};

inline std::string replace_all(std::string text, const std::string& token,
                               const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(token, pos)) != std::string::npos) {
    text.replace(pos, token.size(), value);
    pos += value.size();
  }
  return text;
}

inline std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

// Instantiates the template for one request.  Placeholders are substituted and
// nothing else about the template text changes.
inline PromptText build_prompt(Purpose purpose, const PromptContext& ctx) {
  PromptText out;
  const std::string object_part_user =
      "Object: " + ctx.object_name + "\nPart: " + ctx.part_name;
  switch (purpose) {
    case Purpose::PartList:
      out.system_text = kPartListSystem;
      break;  // the rendered image is the whole user message
    case Purpose::ArticulationTree:
      if (ctx.object_name.empty() || ctx.part_names.empty())
        throw std::invalid_argument("articulation tree prompt needs object and parts");
      out.system_text = kTreeSystem;
      out.user_text = replace_all(
          replace_all(kTreeUser, "OBJECT_NAME", ctx.object_name),
          "RECOGNIZED_PARTS", join_names(ctx.part_names));
      break;
    case Purpose::HingeTopology:
      out.system_text = kTopologySystem;
      out.user_text = object_part_user;
      break;
    case Purpose::HingePointsTwo:
    case Purpose::HingePointsOne: {
      if (ctx.object_name.empty() || ctx.part_name.empty())
        throw std::invalid_argument("hinge point prompt needs object and part names");
      const char* tmpl = purpose == Purpose::HingePointsTwo ? kHingePointsTwoUser
                                                            : kHingePointsOneUser;
      out.user_text = replace_all(replace_all(tmpl, "{object_name}", ctx.object_name),
                                  "{part_name}", ctx.part_name);
      break;
    }
    case Purpose::PrismaticClass:
      out.system_text = kPrismaticSystem;
      out.user_text = object_part_user;
      break;
    case Purpose::SlidingArrow:
      if (ctx.object_name.empty() || ctx.part_name.empty())
        throw std::invalid_argument("sliding arrow prompt needs object and part names");
      out.user_text = replace_all(replace_all(kSlidingArrowUser, "{object_name}", ctx.object_name),
                                  "{part_name}", ctx.part_name);
      break;
  }
  return out;
}

}  // namespace artic::prompts
