#include "phishembed/corpus.hpp"

namespace phishembed {

namespace {

TemplateBank build_default_bank() {
    TemplateBank bank;

    bank.legitimate = {
        {"no-reply@spotify.com", "{name}, your Premium Student discount renews soon",
         "Hi {name}, thanks for being a Premium Student member while you study at {university}. "
         "Your discounted plan renews on {day} for {amount}, and we verify your enrollment once a "
         "year so the student price keeps applying. You do not need to do anything if you are still "
         "enrolled. To review your plan, change your payment card, or check which playlists are "
         "saved offline, open your account page at {url} whenever it suits you. Enjoy the music "
         "between classes.",
         "https://www.spotify.com/us/account/overview/", ""},
        {"library@{campus_host}", "Reminder: library items due {day}",
         "Dear {name}, this is a courtesy reminder from the {university} Libraries. Two items "
         "checked out on your student card are due back on {day}. You can renew them once online "
         "unless another patron has placed a hold. Late returns add a small fine to your student "
         "account, which can delay registration holds being cleared. Sign in with your campus "
         "credentials at {url} to see due dates and renew. Study rooms on the third floor can also "
         "be reserved there.",
         "https://library.{campus_host}/myaccount/loans", ""},
        {"registrar@{campus_host}", "{name}, spring registration opens {day}",
         "Hello {name}, registration for the spring term opens for your student class on {day} at "
         "eight in the morning. Before then, meet with your academic advisor and clear any holds "
         "listed on your record. The course schedule and seat availability are posted in the "
         "student portal at {url}, where you can also build a plan of classes in advance. If you "
         "are living in {city} over the break, remember that advising appointments can be held by "
         "video call.",
         "https://my.{campus_host}/registration/planner", ""},
        {"finaid@{campus_host}", "Your financial aid refund has been processed",
         "Dear {name}, the {university} Office of Financial Aid has processed your refund of "
         "{amount} for the current term. Funds will arrive by direct deposit within three to five "
         "business days, based on the account you entered during student onboarding. Your "
         "itemized award letter and any remaining balance are available in the student portal at "
         "{url}. Please contact our office in the student services building with any questions "
         "about loans, grants, or work study hours.",
         "https://finaid.{campus_host}/awards/summary", ""},
        {"recsports@{campus_host}", "Welcome back to the Recreation Center, {name}",
         "Hi {name}, your student membership at the {university} Recreation Center is active for "
         "the semester. Group fitness classes start on {day}, and the climbing wall reopens after "
         "maintenance this week. Bring your student ID to check in at the front desk. Intramural "
         "team sign ups for soccer and volleyball close soon, so gather your friends. See the full "
         "class schedule and reserve equipment at {url}. We look forward to seeing you in the "
         "gym.",
         "https://recsports.{campus_host}/programs/schedule", ""},
        {"shipment-tracking@amazon.com", "Your Prime Student order has shipped",
         "Hello {name}, your Prime Student order of textbooks and a desk lamp has shipped and "
         "should arrive at your address in {city} on {day}. The order total was {amount}, charged "
         "to the card on file. Because you are a Prime Student member, shipping was free. You can "
         "track the package, change delivery instructions, or request a return from your orders "
         "page at {url}. Thank you for shopping with us, and good luck with the semester.",
         "https://www.amazon.com/gp/your-account/order-history", ""},
        {"passes@{city_slug}transit.gov", "Your semester transit pass is ready",
         "Dear {name}, your discounted student transit pass for {city} buses and light rail is now "
         "active for the semester. The pass is linked to your {university} ID card, so simply tap "
         "the card on any reader when boarding. Routes serving campus run every ten minutes on "
         "weekdays starting {day}. Service alerts, maps, and trip planning tools are available at "
         "{url}. Please report a lost card promptly so we can transfer the remaining balance.",
         "https://www.ridetransit.gov/student-pass", ""},
        {"noreply@email.apple.com", "Your Apple Music student membership",
         "Hi {name}, we have confirmed that you are still a student at {university}, so your Apple "
         "Music student membership continues at the reduced price of {amount} per month. The next "
         "verification happens in twelve months. You can manage your subscription, update your "
         "payment method, or cancel at any time from your account settings at {url}. Your "
         "library, playlists, and downloads stay exactly as they are. Thanks for listening.",
         "https://support.apple.com/billing", ""},
        {"alerts@chase.com", "{name}, your College Checking statement is available",
         "Hello {name}, your monthly statement for your Chase College Checking account is now "
         "available. As a student, you pay no monthly service fee until graduation. This month "
         "you made deposits totaling {amount}. We noticed you recently used an ATM near campus in "
         "{city}; there was no fee for that withdrawal. Sign in at {url} to download the statement "
         "or set up balance alerts. We will never ask for your password by email.",
         "https://secure.chase.com/web/auth/dashboard", ""},
        {"housing@{campus_host}", "Maintenance request update for your residence hall room",
         "Dear {name}, facilities staff will visit your residence hall room on {day} between nine "
         "and noon to repair the heating unit you reported. You do not need to be present, but "
         "please secure valuables and clear the area near the window. Work orders for all "
         "{university} student housing can be tracked at {url}. If the issue continues after the "
         "repair, reply to this message or call the housing front desk in the lobby.",
         "https://housing.{campus_host}/maintenance/requests", ""},
        {"careers@{campus_host}", "{name}, register for the fall career fair",
         "Hi {name}, the {university} Career Center is hosting the fall career fair on {day} in "
         "the student union ballroom. More than eighty employers from {city} and across the region "
         "will recruit for internships and full time roles. Students who upload a resume ahead of "
         "time can schedule short interviews. Register and browse the employer list at {url}. "
         "Resume review drop in hours run every afternoon this week in our office.",
         "https://careers.{campus_host}/events/career-fair", ""},
        {"healthcenter@{campus_host}", "Appointment confirmation at Student Health",
         "Dear {name}, this confirms your appointment at Student Health Services on {day}. Please "
         "arrive ten minutes early and bring your student ID and insurance card. Visits for "
         "enrolled {university} students carry no charge, although some lab tests may be billed "
         "to your student account. To reschedule, complete intake forms, or message your provider "
         "securely, visit the patient portal at {url}. For urgent needs after hours, call the nurse "
         "line.",
         "https://health.{campus_host}/portal/appointments", ""},
        {"newsletter@visit{city_slug}.org", "{city} weekend events for students",
         "Hi {name}, here is what is happening in {city} this weekend. The downtown farmers market "
         "returns on {day} with live music and food trucks, and students who show a valid "
         "{university} ID get free entry to the art museum all month. A bike path along the river "
         "has also reopened. See the full calendar, maps, and discount details at {url}. You "
         "receive this newsletter because you subscribed at the campus welcome fair.",
         "https://www.visitcity.org/events/weekend", ""},
        {"it-help@{campus_host}", "Your student Microsoft 365 storage",
         "Hello {name}, as a {university} student you receive Microsoft 365 with one terabyte of "
         "OneDrive storage at no cost while enrolled. Your account is currently using about half "
         "of that space. Files saved before graduation remain available for ninety days after you "
         "leave. Instructions for installing the desktop apps on up to five devices are on the IT "
         "help site at {url}. Contact the campus help desk if you have trouble signing in.",
         "https://it.{campus_host}/software/microsoft365", ""},
    };

    bank.phishing = {
        {"service@paypal-resolution.net", "Your account has been limited",
         "Dear Customer, we detected unusual activity on your account and have temporarily "
         "limited access to protect you. Until you confirm your information, you will not be able "
         "to send or receive payments. A pending transfer of {amount} is on hold. Please verify "
         "your identity within 24 hours by following the secure link {url} and entering your login "
         "details and card information. Failure to respond will result in permanent suspension. "
         "Thank you for your cooperation.",
         "", "paypal"},
        {"billing@netflix-accounts.info", "Payment declined: update your billing details",
         "Hello, we were unable to process your latest monthly payment of {amount}. Your "
         "membership will be suspended on {day} unless you update your billing information. To "
         "keep watching your favorite shows without interruption, confirm your card details now "
         "at {url}. This only takes a minute. If you have already updated your payment method, "
         "please ignore this message. We appreciate your continued membership and look forward to "
         "serving you.",
         "", "netflix"},
        {"orders@amazon-support-center.com", "Problem with your recent order",
         "Dear valued customer, there was a problem processing your recent order and a charge of "
         "{amount} could not be verified. Your order has been placed on hold and may be cancelled. "
         "To avoid cancellation and restore your account, please confirm your billing address and "
         "payment information at {url} within 48 hours. For your security, this link expires "
         "shortly. We apologize for the inconvenience and thank you for shopping with us.",
         "", "amazon"},
        {"security@appleid-verify.com", "Your Apple ID has been locked",
         "Dear user, your Apple ID was used to sign in on an unrecognized device and has been "
         "locked for security reasons. To unlock your account you must verify your identity. "
         "Please visit {url} and confirm your password, security questions, and payment method. "
         "If you do not verify by {day}, your account and all purchased content will be "
         "permanently deleted. We take your privacy seriously and apologize for any "
         "inconvenience this may cause.",
         "", "apple"},
        {"admin@mailbox-quota.net", "Mailbox storage full: action required",
         "Attention, your mailbox has exceeded its storage limit and you can no longer send or "
         "receive new messages. Incoming mail is being held on the server and will be deleted "
         "after {day}. To increase your quota immediately at no cost, log in through the "
         "Microsoft upgrade portal at {url} using your current email password. This is an "
         "automated notice from the system administrator. Do not reply to this message, as this "
         "address is not monitored.",
         "", "microsoft"},
        {"alert@wellsfargo-online.co", "Unusual sign-in activity detected",
         "Dear account holder, we noticed an unusual sign-in attempt on your online banking "
         "profile from a new location. As a precaution, online access has been restricted. To "
         "restore access, please confirm your identity by entering your username, password, and "
         "card number at {url}. If we do not hear from you by {day}, your debit card will be "
         "deactivated. Thank you for helping us keep your account safe and secure.",
         "", "wellsfargo"},
        {"delivery@fedex-parcel-notice.com", "Delivery attempt failed for your package",
         "Hello, our courier attempted to deliver your package today but no one was available to "
         "sign for it. The parcel is now held at our local depot. To schedule a new delivery, a "
         "redelivery fee of {amount} must be paid. Please confirm your address and pay the fee at "
         "{url} before {day}, otherwise the package will be returned to the sender. Tracking "
         "number {code}. Thank you for choosing our service.",
         "", "fedex"},
        {"rewards@walmart-winners.net", "Congratulations, you have been selected",
         "Congratulations! Your email address was randomly selected to receive a {amount} gift "
         "card as part of our customer appreciation program. Only a few winners are chosen each "
         "month, so act fast. To claim your reward, complete a short survey and provide your "
         "shipping details at {url}. A small handling fee may apply. This offer expires on {day}. "
         "Reference code {code}. Thank you for being a loyal shopper.",
         "", "walmart"},
        {"refunds@tax-return-center.org", "You are eligible for a tax refund",
         "After the last annual calculation of your fiscal activity, we have determined that you "
         "are eligible to receive a tax refund of {amount}. To receive the refund, please submit "
         "the refund request form and allow up to five business days for processing. Access the "
         "form at {url} and enter your social security number and bank account details. Requests "
         "received after {day} cannot be processed. Reference number {code}.",
         "", "irs"},
        {"dse@docusign-mail.net", "Document ready for signature",
         "Hello, you have received a document for review and electronic signature. The sender "
         "shared an invoice and payment agreement totaling {amount} that requires your signature "
         "by {day}. Please click {url} to review the document and sign it securely. You may be "
         "asked to log in with your email account to confirm your identity. Do not share this "
         "email. Security code {code}. Powered by our electronic signature service.",
         "", "docusign"},
        {"no-reply@dropbox-share.co", "A file has been shared with you",
         "Hi, someone has shared an important file with you using our file sharing service. The "
         "document titled Payment Details is waiting in your shared folder and will be available "
         "until {day}. To view or download the file, sign in with your email address and password "
         "at {url}. If you do not recognize the sender, you can still preview the file safely. "
         "Happy sharing, and thank you for using our service.",
         "", "dropbox"},
        {"premium@spotify-renewal.net", "Your Premium subscription has expired",
         "Hello, we were unable to renew your Premium subscription because your payment of "
         "{amount} was declined. Your account has been downgraded and your downloaded music and "
         "playlists will be removed on {day}. To restore Premium and keep your music, please "
         "update your payment details at {url} as soon as possible. If you need assistance, our "
         "support team is available around the clock. Thank you for listening with us.",
         "", "spotify"},
        {"security@coinbase-wallet.info", "Withdrawal request pending confirmation",
         "Dear client, a withdrawal of {amount} in cryptocurrency was requested from your wallet. "
         "If you did not make this request, your account may be compromised. Cancel the "
         "transaction immediately by verifying your account at {url} and entering your recovery "
         "phrase. Unconfirmed withdrawals are processed automatically after 12 hours. Reference "
         "{code}. For your protection, do not share this message with anyone else.",
         "", "coinbase"},
        {"notifications@linkedin-verify.net", "Your profile will be deactivated",
         "Hello, our system detected that your professional profile does not meet our updated "
         "verification requirements. To avoid deactivation of your account and loss of your "
         "connections, please verify your account details at {url} before {day}. Verification "
         "requires your email login and phone number. You have pending messages and several new "
         "invitations waiting for you. Thank you for being part of our professional community.",
         "", "linkedin"},
    };

    bank.first_names = {"Alex", "Jordan", "Taylor", "Morgan", "Casey", "Riley",
                        "Jamie", "Avery", "Quinn", "Reese", "Dakota", "Skyler"};
    bank.cities = {"Lubbock", "Austin", "Denver", "Portland", "Madison", "Tucson",
                   "Boulder", "Raleigh", "Spokane", "Omaha"};
    bank.campuses = {
        {"Westbrook University", "westbrook.edu"},
        {"Lakeshore State University", "lakeshorestate.edu"},
        {"Red Plains University", "redplains.edu"},
        {"Northfield College", "northfield.edu"},
    };
    bank.amounts = {"$4.99", "$5.99", "$19.99", "$49.00", "$120.00",
                    "$250.00", "$349.99", "$500.00", "$1,250.00", "$89.95"};
    bank.days = {"Monday", "Tuesday", "Wednesday", "Thursday", "Friday",
                 "September 14", "October 2", "November 18", "January 9", "March 3"};
    bank.codes = {"REF-20931", "TRK-558210", "CASE-77142", "ID-40281", "REF-99310", "TRK-11873"};
    return bank;
}

}  // namespace

const TemplateBank& default_template_bank() {
    static const TemplateBank bank = build_default_bank();
    return bank;
}

const std::vector<std::string>& targeted_slots() {
    static const std::vector<std::string> slots = {"{name}", "{city}", "{city_slug}",
                                                   "{university}", "{campus_host}"};
    return slots;
}

}  // namespace phishembed
